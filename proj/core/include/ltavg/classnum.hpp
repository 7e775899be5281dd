#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ltavg::classnum {

struct FormClassCount {
  std::int64_t d = 0;  // discriminant, d < 0, d = 0 or 1 mod 4
  std::int64_t h = 0;  // primitive reduced positive-definite forms
};

struct ConductorTerm {
  std::int64_t f = 0;  // conductor, f^2 | D
  std::int64_t d = 0;  // D / f^2
  std::int64_t h = 0;  // h(d)
};

struct ClassNumberRecord {
  std::int64_t D = 0;
  std::int64_t H = 0;  // Kronecker class number, sum of the terms below
  std::vector<ConductorTerm> decomposition;
};

// Class number h(d) by enumerating reduced primitive forms (a,b,c):
// |b| <= a <= c, b = d mod 2, b^2 - 4ac = d, gcd(a,b,c) = 1,
// with b >= 0 whenever |b| = a or a = c.
FormClassCount form_class_number(std::int64_t d);

// Kronecker class number H(D) = sum over f with f^2 | D and
// D/f^2 = 0 or 1 mod 4 of h(D/f^2).
ClassNumberRecord kronecker_H(std::int64_t D);

// Memoized H(D); safe for concurrent lookups of distinct keys.
std::int64_t kronecker_H_cached(std::int64_t D);

struct Lemma8Row {
  std::string name;   // which of the four sums
  double sum = 0.0;   // sum over B(r) < p <= x
  double bound = 0.0; // the reference scale (x^{5/4}, x, sqrt(x), 1)
  double ratio = 0.0; // sum / bound
};

// The four H_{r,p} sums over B(r) < p <= x with their normalized ratios.
// Empty prime range yields zero sums.
std::vector<Lemma8Row> lemma8_diagnostics(std::int64_t x, std::int64_t r);

}  // namespace ltavg::classnum
