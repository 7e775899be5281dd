#pragma once

#include <cstdint>

namespace ltavg::analytic {

struct ConstantValue {
  std::int64_t r = 0;
  double value = 0.0;
  std::int64_t truncation_prime = 0;
  double tail_bound = 0.0;  // bound on |log(true/truncated)|
};

// The average constant C_r as a truncated Euler product:
//   C_r = (2/pi) * prod_{l | r} (1 - 1/l^2)^(-1)
//               * prod_{l not| r} l(l^2-l-1) / ((l-1)(l^2-1)).
// For r = 0 every prime takes the l | r factor and the full product is
// (2/pi)*zeta(2) = pi/3, the classical supersingular average constant.
// (Partial sums of H_{r,p}/(2p) against exact class counts pin down the
// inverted factor; see the convergence checks in the test suite.)
ConstantValue euler_product_Cr(std::int64_t r, std::int64_t truncation_prime);

// Memoized C_r at a fixed internal truncation, for report predictions.
double constant_Cr(std::int64_t r);

struct ComparisonPoint {
  double x = 0.0;
  double pi_half = 0.0;
  double quadrature_error = 0.0;
};

// pi_{1/2}(x) = integral from 2 to x of dt / (2 sqrt(t) log t),
// by adaptive Simpson quadrature at 1e-10 relative tolerance.
ComparisonPoint pi_half(double x);

// B(r) = max{3, r, r^2/4} as a real number; prime ranges use p > B(r)
// strictly.
double B_of_r(std::int64_t r);

struct Lemma3Result {
  double sum = 0.0;         // sum of H_{r,p}/(2p) over B(r) < p <= x
  double prediction = 0.0;  // C_r * pi_{1/2}(x)
  double ratio = 0.0;       // sum / prediction (0 on empty range)
};

Lemma3Result lemma3_partial_sum(std::int64_t x, std::int64_t r);

}  // namespace ltavg::analytic
