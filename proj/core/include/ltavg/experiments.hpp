#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltavg/cache.hpp"

namespace ltavg::experiments {

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::int64_t x = 0;  // prime cutoff
  std::int64_t A = 0;
  std::int64_t B = 0;
  std::int64_t r = 0;
  double c = 2.0;      // log-power for the exceptional threshold
  int threads = 1;
  std::string cache_dir;
};

struct ErrorTerm {
  std::string name;
  double value = 0.0;
};

struct PerPrimeRow {
  std::int64_t p = 0;
  std::int64_t N_r = 0;   // nonsingular pairs mod p with trace r
  std::int64_t H_rp = 0;  // H(r^2 - 4p)
  double contrib = 0.0;   // this prime's share of the mean
};

struct AverageReport {
  ExperimentConfig config;
  double mean = 0.0;
  double prediction = 0.0;  // C_r * pi_{1/2}(x)
  std::optional<double> second_moment;
  std::optional<std::int64_t> exceptional_count;
  std::optional<double> threshold;  // sqrt(x)/log^c x
  std::vector<ErrorTerm> error_budget;
  std::vector<PerPrimeRow> per_prime_rows;
  std::vector<std::string> warnings;
  double seconds = 0.0;  // wall time; never part of deterministic output
};

// Exact #{a in Z : |a| <= A, a = residue mod p}.
std::int64_t box_residue_count(std::int64_t residue, std::int64_t p, std::int64_t A);

// pi^r_E(x) for E : y^2 = x^3 + ax + b with a, b in Z: primes
// B(r) < p <= x of nonsingular reduction with trace r. With
// exclude_ab_multiples, primes dividing a nonzero coordinate are
// skipped (the paper's p not dividing ab accounting).
std::int64_t curve_pi_r(std::int64_t a, std::int64_t b, std::int64_t x,
                        std::int64_t r, bool exclude_ab_multiples = true);

// Mean of pi^r over the (2A+1)(2B+1) box, by per-prime residue-class
// counting against cached trace tables.
AverageReport average_pi_r(const ExperimentConfig& config);

// Same mean by the brute-force per-curve loop (oracle path).
double average_pi_r_brute(const ExperimentConfig& config);

// (1/4AB) sum over the box of |pi^r_E(x) - C_r pi_{1/2}(x)|^2.
AverageReport second_moment(const ExperimentConfig& config);

// Curves with |pi^r_E(x) - C_r pi_{1/2}(x)| > sqrt(x)/log^c x.
AverageReport exceptional_census(const ExperimentConfig& config, double d);

// Deterministic JSON / CSV serializations of a report. The JSON carries
// timing only when requested, so equal inputs give byte-equal output.
std::string report_json(const AverageReport& report, bool with_timing = false);
std::string report_csv(const AverageReport& report);

}  // namespace ltavg::experiments
