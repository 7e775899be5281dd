#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ltavg::arith {

// All modular arithmetic is restricted to moduli below 2^31 so that
// products of two reduced residues fit in a signed 64-bit integer.
inline constexpr std::int64_t kMaxModulus = std::int64_t{1} << 31;

struct ArithError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// All primes <= limit, ascending. Throws on limit < 2.
std::vector<std::int64_t> sieve_primes(std::int64_t limit);

bool is_prime(std::int64_t n);

std::int64_t mod_reduce(std::int64_t a, std::int64_t p);
std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p);
std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p);

// Multiplicative inverse mod prime p. Throws if p | a.
std::int64_t mod_inv(std::int64_t a, std::int64_t p);

// Legendre symbol (a/p) in {-1, 0, +1} by Euler's criterion.
// Throws unless p is an odd prime.
int legendre(std::int64_t a, std::int64_t p);

// Value of the quartic residue symbol: 0 or i^exponent.
struct QuarticValue {
  bool zero = false;
  int exponent = 0;  // in [0, 4); meaningful only when !zero

  std::complex<double> to_complex() const;
  bool operator==(const QuarticValue&) const = default;
};

// Smallest primitive root mod prime p.
std::int64_t smallest_primitive_root(std::int64_t p);

// Biquadratic residue symbol (a/p)_4 for p = 1 mod 4, normalized so that
// the smallest primitive root g maps to i. Throws for p = 3 mod 4.
QuarticValue quartic_symbol(std::int64_t a, std::int64_t p);

// True iff a is a fourth power mod p (p = 1 mod 4, p does not divide a).
bool is_quartic_residue(std::int64_t a, std::int64_t p);

}  // namespace ltavg::arith
