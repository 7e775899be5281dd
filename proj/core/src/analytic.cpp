#include "ltavg/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>

#include "ltavg/arith.hpp"
#include "ltavg/classnum.hpp"

namespace ltavg::analytic {

ConstantValue euler_product_Cr(std::int64_t r, std::int64_t truncation_prime) {
  if (truncation_prime < 3)
    throw arith::ArithError("euler_product_Cr: truncation must be >= 3");
  std::int64_t ar = std::abs(r);
  double log_product = 0.0;
  for (std::int64_t l : arith::sieve_primes(truncation_prime)) {
    double ld = static_cast<double>(l);
    double factor;
    if (ar % l == 0) {  // every l divides r = 0
      factor = 1.0 / (1.0 - 1.0 / (ld * ld));
    } else {
      factor = ld * (ld * ld - ld - 1.0) / ((ld - 1.0) * (ld * ld - 1.0));
    }
    log_product += std::log(factor);
  }
  double T = static_cast<double>(truncation_prime);
  ConstantValue out;
  out.r = r;
  out.value = (2.0 / M_PI) * std::exp(log_product);
  out.truncation_prime = truncation_prime;
  out.tail_bound = 2.0 / T;  // sum_{l > T} 2/l^2 <= 2/T
  return out;
}

double constant_Cr(std::int64_t r) {
  static std::unordered_map<std::int64_t, double> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(std::abs(r));
  if (it != memo.end()) return it->second;
  double v = euler_product_Cr(std::abs(r), 1000000).value;
  memo.emplace(std::abs(r), v);
  return v;
}

namespace {

double integrand(double t) { return 1.0 / (2.0 * std::sqrt(t) * std::log(t)); }

double simpson(double a, double fa, double m, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(double a, double fa, double b, double fb, double m, double fm,
                double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = integrand(lm), frm = integrand(rm);
  double left = simpson(a, fa, lm, flm, m, fm);
  double right = simpson(m, fm, rm, frm, b, fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive(a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
         adaptive(m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

double integrate(double a, double b, double rel_tol) {
  if (b <= a) return 0.0;
  double fa = integrand(a), fb = integrand(b), m = 0.5 * (a + b);
  double fm = integrand(m);
  double whole = simpson(a, fa, m, fm, b, fb);
  double tol = std::max(rel_tol * std::abs(whole), 1e-15);
  return adaptive(a, fa, b, fb, m, fm, whole, tol, 60);
}

}  // namespace

ComparisonPoint pi_half(double x) {
  if (x < 2.0) throw arith::ArithError("pi_half: x must be >= 2");
  ComparisonPoint out;
  out.x = x;
  if (x == 2.0) return out;
  // Interval doubling keeps the recursion shallow for large x.
  double lo = 2.0, total = 0.0;
  while (lo < x) {
    double hi = std::min(x, lo * 2.0);
    total += integrate(lo, hi, 1e-12);
    lo = hi;
  }
  out.pi_half = total;
  out.quadrature_error = 1e-10 * total;
  return out;
}

double B_of_r(std::int64_t r) {
  double rd = static_cast<double>(r);
  return std::max({3.0, rd, rd * rd / 4.0});
}

Lemma3Result lemma3_partial_sum(std::int64_t x, std::int64_t r) {
  double B = B_of_r(r);
  Lemma3Result out;
  if (x >= 2) {
    for (std::int64_t p : arith::sieve_primes(x)) {
      if (static_cast<double>(p) <= B) continue;
      std::int64_t H = classnum::kronecker_H_cached(r * r - 4 * p);
      out.sum += static_cast<double>(H) / (2.0 * static_cast<double>(p));
    }
  }
  out.prediction =
      constant_Cr(r) * pi_half(std::max(2.0, static_cast<double>(x))).pi_half;
  out.ratio = out.sum > 0 ? out.sum / out.prediction : 0.0;
  return out;
}

}  // namespace ltavg::analytic
