#include "ltavg/classnum.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "ltavg/analytic.hpp"
#include "ltavg/arith.hpp"

namespace ltavg::classnum {

namespace {

void require_discriminant(std::int64_t d, const char* who) {
  std::int64_t m = ((d % 4) + 4) % 4;
  if (d >= 0 || (m != 0 && m != 1))
    throw arith::ArithError(std::string(who) +
                            ": discriminant must be negative and 0 or 1 mod 4");
}

}  // namespace

FormClassCount form_class_number(std::int64_t d) {
  require_discriminant(d, "form_class_number");
  std::int64_t h = 0;
  for (std::int64_t a = 1; 3 * a * a <= -d; ++a) {
    // b runs over -a..a with b = d mod 2.
    std::int64_t b0 = -a;
    if (((b0 - d) & 1) != 0) ++b0;
    for (std::int64_t b = b0; b <= a; b += 2) {
      std::int64_t num = b * b - d;
      if (num % (4 * a) != 0) continue;
      std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && (-b == a || a == c)) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      ++h;
    }
  }
  return FormClassCount{d, h};
}

ClassNumberRecord kronecker_H(std::int64_t D) {
  require_discriminant(D, "kronecker_H");
  ClassNumberRecord rec;
  rec.D = D;
  for (std::int64_t f = 1; f * f <= -D; ++f) {
    if (D % (f * f) != 0) continue;
    std::int64_t d = D / (f * f);
    std::int64_t m = ((d % 4) + 4) % 4;
    if (m != 0 && m != 1) continue;
    std::int64_t h = form_class_number(d).h;
    rec.decomposition.push_back(ConductorTerm{f, d, h});
    rec.H += h;
  }
  return rec;
}

std::int64_t kronecker_H_cached(std::int64_t D) {
  static std::unordered_map<std::int64_t, std::int64_t> memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(D);
    if (it != memo.end()) return it->second;
  }
  std::int64_t H = kronecker_H(D).H;
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(D, H);
  return H;
}

std::vector<Lemma8Row> lemma8_diagnostics(std::int64_t x, std::int64_t r) {
  double B = analytic::B_of_r(r);
  double sum_sqrtH = 0, sum_H_sqrtp = 0, sum_H_p = 0, sum_H_p2 = 0;
  if (x >= 2) {
    for (std::int64_t p : arith::sieve_primes(x)) {
      if (static_cast<double>(p) <= B) continue;
      std::int64_t H = kronecker_H_cached(r * r - 4 * p);
      double Hd = static_cast<double>(H);
      double pd = static_cast<double>(p);
      sum_sqrtH += std::sqrt(Hd);
      sum_H_sqrtp += Hd / std::sqrt(pd);
      sum_H_p += Hd / pd;
      sum_H_p2 += Hd / (pd * pd);
    }
  }
  double xd = static_cast<double>(x);
  std::vector<Lemma8Row> rows;
  auto push = [&rows](std::string name, double sum, double bound) {
    rows.push_back(Lemma8Row{std::move(name), sum, bound,
                             bound > 0 ? sum / bound : 0.0});
  };
  push("sum_sqrt_H", sum_sqrtH, std::pow(xd, 1.25));
  push("sum_H_over_sqrt_p", sum_H_sqrtp, xd);
  push("sum_H_over_p", sum_H_p, std::sqrt(xd));
  push("sum_H_over_p2", sum_H_p2, 1.0);
  return rows;
}

}  // namespace ltavg::classnum
