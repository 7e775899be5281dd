#include "ltavg/verify.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "ltavg/arith.hpp"
#include "ltavg/characters.hpp"
#include "ltavg/classnum.hpp"
#include "ltavg/curves.hpp"
#include "ltavg/experiments.hpp"

namespace ltavg::verify {

namespace {

CheckResult lemma1_equivalence(std::int64_t max_p) {
  CheckResult out{"lemma1_class_number_equivalence", true, ""};
  for (std::int64_t p : arith::sieve_primes(max_p)) {
    if (p < 5) continue;
    auto classes = curves::class_list_brute(p);
    std::int64_t rmax = curves::hasse_bound(p);
    for (std::int64_t r = -rmax; r <= rmax; ++r) {
      if (r == 0 || r % p == 0) continue;
      std::int64_t count = curves::summarize_classes(p, r, classes).class_count;
      std::int64_t H = classnum::kronecker_H_cached(r * r - 4 * p);
      if (count != H) {
        out.passed = false;
        std::ostringstream msg;
        msg << "p=" << p << " r=" << r << ": classes=" << count << " H=" << H;
        out.detail = msg.str();
        return out;
      }
    }
  }
  return out;
}

CheckResult lemma2_orbits(std::int64_t max_p) {
  CheckResult out{"lemma2_orbit_sizes", true, ""};
  for (std::int64_t p : arith::sieve_primes(std::min<std::int64_t>(max_p, 37))) {
    if (p < 5) continue;
    for (std::int64_t a = 0; a < p; ++a)
      for (std::int64_t b = 0; b < p; ++b) {
        curves::CurveParams c{p, a, b};
        if (!curves::is_nonsingular(c)) continue;
        auto direct = static_cast<std::int64_t>(curves::orbit_pairs(c).size());
        if (direct != curves::orbit_size(c)) {
          out.passed = false;
          std::ostringstream msg;
          msg << "p=" << p << " (" << a << "," << b << "): formula="
              << curves::orbit_size(c) << " direct=" << direct;
          out.detail = msg.str();
          return out;
        }
      }
  }
  return out;
}

CheckResult lemma4_criterion(std::int64_t max_p) {
  CheckResult out{"lemma4_isomorphism_criterion", true, ""};
  for (std::int64_t p : {std::int64_t{13}, std::int64_t{19}}) {
    if (p > max_p) continue;
    std::vector<curves::CurveParams> sample;
    for (std::int64_t a = 1; a < p; ++a)
      for (std::int64_t b = 1; b < p; ++b) {
        curves::CurveParams c{p, a, b};
        if (curves::is_nonsingular(c)) sample.push_back(c);
      }
    for (const auto& c1 : sample)
      for (const auto& c2 : sample) {
        if (curves::are_isomorphic_criterion(c1, c2) !=
            curves::are_isomorphic_direct(c1, c2)) {
          out.passed = false;
          std::ostringstream msg;
          msg << "p=" << p << " (" << c1.a << "," << c1.b << ") vs (" << c2.a
              << "," << c2.b << ")";
          out.detail = msg.str();
          return out;
        }
      }
  }
  return out;
}

CheckResult lemma5_identity() {
  CheckResult out{"lemma5_orthogonality_identity", true, ""};
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (std::int64_t q : {std::int64_t{7}, std::int64_t{13}, std::int64_t{15}}) {
    auto table = characters::CharacterTable::build(q);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::complex<double>> coeffs(25);
      for (auto& c : coeffs) c = {unif(rng), unif(rng)};
      auto sides = characters::lemma5_check(table, coeffs);
      double scale = std::max(1.0, std::abs(sides.rhs));
      if (std::abs(sides.lhs - sides.rhs) > 1e-9 * scale) {
        out.passed = false;
        std::ostringstream msg;
        msg << "q=" << q << " lhs=" << sides.lhs << " rhs=" << sides.rhs;
        out.detail = msg.str();
        return out;
      }
    }
  }
  return out;
}

CheckResult lemma7_inequality(std::int64_t max_q) {
  CheckResult out{"lemma7_polya_vinogradov", true, ""};
  for (std::int64_t q = 3; q <= max_q; ++q) {
    if (!characters::CharacterTable::supported_modulus(q)) continue;
    auto table = characters::CharacterTable::build(q);
    auto scan = characters::polya_vinogradov_scan(table);
    if (scan.max_abs_sum > scan.bound) {
      out.passed = false;
      std::ostringstream msg;
      msg << "q=" << q << " max=" << scan.max_abs_sum << " bound=" << scan.bound;
      out.detail = msg.str();
      return out;
    }
  }
  return out;
}

CheckResult path_equivalence() {
  CheckResult out{"average_path_equivalence", true, ""};
  for (std::int64_t r : {std::int64_t{0}, std::int64_t{1}, std::int64_t{2}}) {
    experiments::ExperimentConfig config;
    config.x = 30;
    config.A = 20;
    config.B = 20;
    config.r = r;
    double fast = experiments::average_pi_r(config).mean;
    double brute = experiments::average_pi_r_brute(config);
    if (fast != brute) {
      out.passed = false;
      std::ostringstream msg;
      msg << "r=" << r << " residue-path=" << fast << " brute=" << brute;
      out.detail = msg.str();
      return out;
    }
  }
  return out;
}

}  // namespace

std::vector<CheckResult> verify_all(std::int64_t max_p) {
  std::vector<CheckResult> results;
  results.push_back(lemma1_equivalence(max_p));
  results.push_back(lemma2_orbits(max_p));
  results.push_back(lemma4_criterion(max_p));
  results.push_back(lemma5_identity());
  results.push_back(lemma7_inequality(std::min<std::int64_t>(max_p, 101)));
  results.push_back(path_equivalence());
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace ltavg::verify
