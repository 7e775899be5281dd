#include "ltavg/experiments.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <locale>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "ltavg/analytic.hpp"
#include "ltavg/arith.hpp"
#include "ltavg/classnum.hpp"

namespace ltavg::experiments {

namespace {

using arith::ArithError;
using json = nlohmann::ordered_json;

std::int64_t floordiv(std::int64_t n, std::int64_t d) {
  std::int64_t q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

class KahanSum {
 public:
  void add(double v) {
    double y = v - compensation_;
    double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

void validate_config(const ExperimentConfig& config) {
  if (config.x < 5) throw ArithError("experiment: x must be >= 5");
  if (config.A < 1 || config.B < 1)
    throw ArithError("experiment: A, B must be >= 1");
}

void hypothesis_warnings(const ExperimentConfig& config,
                         std::vector<std::string>& warnings) {
  double x = static_cast<double>(config.x);
  double A = static_cast<double>(config.A);
  double B = static_cast<double>(config.B);
  if (A <= std::sqrt(x) || B <= std::sqrt(x))
    warnings.push_back("hypothesis A,B > sqrt(x) violated");
  if (A * B <= std::pow(x, 1.5))
    warnings.push_back("hypothesis A*B > x^(3/2) violated");
}

std::vector<std::int64_t> experiment_primes(std::int64_t x, std::int64_t r) {
  double B = analytic::B_of_r(r);
  std::vector<std::int64_t> primes;
  if (x >= 5) {
    for (std::int64_t p : arith::sieve_primes(x))
      if (p > 3 && static_cast<double>(p) > B) primes.push_back(p);
  }
  return primes;
}

void check_memory_budget(const std::vector<std::int64_t>& primes) {
  constexpr std::uint64_t kBudgetBytes = std::uint64_t{2} << 30;
  std::uint64_t bytes = 0;
  for (std::int64_t p : primes)
    bytes += static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p) / 8 + 64;
  if (bytes > kBudgetBytes)
    throw ResourceError("experiment: membership tables exceed the memory budget");
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, n) on the requested number of threads.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

bool excluded_prime(std::int64_t a, std::int64_t b, std::int64_t p) {
  // p | ab with zero coordinates resolved per nonzero factor.
  return (a != 0 && arith::mod_reduce(a, p) == 0) ||
         (b != 0 && arith::mod_reduce(b, p) == 0);
}

void theorem1_budget(const ExperimentConfig& config, AverageReport& report) {
  double x = static_cast<double>(config.x);
  double A = static_cast<double>(config.A);
  double B = static_cast<double>(config.B);
  double lx = std::log(x);
  report.error_budget = {
      {"(1/A+1/B)*x*log(x)", (1.0 / A + 1.0 / B) * x * lx},
      {"x^(5/4)*log^3(x)/sqrt(A*B)", std::pow(x, 1.25) * lx * lx * lx / std::sqrt(A * B)},
      {"sqrt(x)/log^c(x)", std::sqrt(x) / std::pow(lx, config.c)},
  };
}

void theorem4_budget(const ExperimentConfig& config, AverageReport& report) {
  double x = static_cast<double>(config.x);
  double A = static_cast<double>(config.A);
  double B = static_cast<double>(config.B);
  double lx = std::log(x);
  report.error_budget = {
      {"(1/A+1/B)*x^2", (1.0 / A + 1.0 / B) * x * x},
      {"x^(5/2)*log^3(x)/sqrt(A*B)", std::pow(x, 2.5) * lx * lx * lx / std::sqrt(A * B)},
      {"x/log^c(x)", x / std::pow(lx, config.c)},
      {"sqrt(x)*loglog(10*A*B)", std::sqrt(x) * std::log(std::log(10.0 * A * B))},
  };
}

// Per-curve trace counting shared by the moment/census paths: n(a, b) =
// number of listed primes whose membership bit is set, minus exclusions.
struct MembershipCounter {
  const std::vector<std::int64_t>& primes;
  const std::vector<curves::TraceDistribution>& dists;

  std::int64_t count(std::int64_t a, std::int64_t b) const {
    std::int64_t n = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      std::int64_t p = primes[i];
      if (excluded_prime(a, b, p)) continue;
      if (dists[i].member(arith::mod_reduce(a, p), arith::mod_reduce(b, p))) ++n;
    }
    return n;
  }
};

}  // namespace

std::int64_t box_residue_count(std::int64_t residue, std::int64_t p, std::int64_t A) {
  if (A < 0) throw ArithError("box_residue_count: A must be >= 0");
  return floordiv(A - residue, p) + floordiv(A + residue, p) + 1;
}

std::int64_t curve_pi_r(std::int64_t a, std::int64_t b, std::int64_t x,
                        std::int64_t r, bool exclude_ab_multiples) {
  __int128 disc = 4 * __int128(a) * a * a + 27 * __int128(b) * b;
  if (disc == 0)
    throw curves::CurveError("curve_pi_r: curve singular over the rationals");
  std::int64_t n = 0;
  for (std::int64_t p : experiment_primes(x, r)) {
    if (exclude_ab_multiples && excluded_prime(a, b, p)) continue;
    curves::CurveParams c{p, arith::mod_reduce(a, p), arith::mod_reduce(b, p)};
    if (!curves::is_nonsingular(c)) continue;
    if (curves::trace_of_frobenius(c) == r) ++n;
  }
  return n;
}

AverageReport average_pi_r(const ExperimentConfig& config) {
  auto start = std::chrono::steady_clock::now();
  validate_config(config);
  AverageReport report;
  report.config = config;
  hypothesis_warnings(config, report.warnings);

  auto primes = experiment_primes(config.x, config.r);
  check_memory_budget(primes);
  cache::TraceCache cache(config.cache_dir);

  struct PrimeResult {
    std::int64_t weighted = 0;  // sum over trace-r pairs of cntA*cntB
    std::int64_t N_r = 0;
  };
  std::vector<PrimeResult> results(primes.size());
  parallel_for(primes.size(), resolve_threads(config.threads), [&](std::size_t i) {
    std::int64_t p = primes[i];
    curves::TraceDistribution dist = cache.get(p, config.r);
    std::vector<std::int64_t> cntA(static_cast<std::size_t>(p)),
        cntB(static_cast<std::size_t>(p));
    for (std::int64_t n = 0; n < p; ++n) {
      cntA[static_cast<std::size_t>(n)] = box_residue_count(n, p, config.A);
      cntB[static_cast<std::size_t>(n)] = box_residue_count(n, p, config.B);
    }
    PrimeResult res;
    res.N_r = dist.count(config.r);
    for (std::size_t w = 0; w < dist.membership.size(); ++w) {
      std::uint64_t word = dist.membership[w];
      while (word) {
        int bit = std::countr_zero(word);
        word &= word - 1;
        std::int64_t idx = static_cast<std::int64_t>(w * 64 + static_cast<std::size_t>(bit));
        res.weighted += cntA[static_cast<std::size_t>(idx / p)] *
                        cntB[static_cast<std::size_t>(idx % p)];
      }
    }
    results[i] = res;
  });

  double denom = 4.0 * static_cast<double>(config.A) * static_cast<double>(config.B);
  std::int64_t total_weighted = 0;  // exact; the mean divides once
  for (std::size_t i = 0; i < primes.size(); ++i) {
    total_weighted += results[i].weighted;
    report.per_prime_rows.push_back(PerPrimeRow{
        primes[i], results[i].N_r,
        classnum::kronecker_H_cached(config.r * config.r - 4 * primes[i]),
        static_cast<double>(results[i].weighted) / denom});
  }
  report.mean = static_cast<double>(total_weighted) / denom;
  report.prediction = analytic::constant_Cr(config.r) *
                      analytic::pi_half(static_cast<double>(config.x)).pi_half;
  theorem1_budget(config, report);
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

double average_pi_r_brute(const ExperimentConfig& config) {
  validate_config(config);
  auto primes = experiment_primes(config.x, config.r);
  std::vector<curves::QuadTable> tables;
  tables.reserve(primes.size());
  for (std::int64_t p : primes) tables.emplace_back(p);
  std::int64_t total = 0;
  for (std::int64_t a = -config.A; a <= config.A; ++a)
    for (std::int64_t b = -config.B; b <= config.B; ++b)
      for (std::size_t i = 0; i < primes.size(); ++i) {
        std::int64_t p = primes[i];
        curves::CurveParams c{p, arith::mod_reduce(a, p), arith::mod_reduce(b, p)};
        if (!curves::is_nonsingular(c)) continue;
        if (curves::trace_of_frobenius(c, tables[i]) == config.r) ++total;
      }
  return static_cast<double>(total) /
         (4.0 * static_cast<double>(config.A) * static_cast<double>(config.B));
}

namespace {

struct PerCurveAccumulation {
  double mean = 0.0;
  double second_moment = 0.0;
  std::int64_t exceptional = 0;
};

PerCurveAccumulation per_curve_scan(const ExperimentConfig& config,
                                    double prediction, double threshold) {
  auto primes = experiment_primes(config.x, config.r);
  check_memory_budget(primes);
  cache::TraceCache cache(config.cache_dir);
  std::vector<curves::TraceDistribution> dists(primes.size());
  parallel_for(primes.size(), resolve_threads(config.threads),
               [&](std::size_t i) { dists[i] = cache.get(primes[i], config.r); });
  MembershipCounter counter{primes, dists};

  struct Row {
    double sum_n = 0.0;
    double sum_sq = 0.0;
    std::int64_t exceptional = 0;
  };
  std::size_t rows_n = static_cast<std::size_t>(2 * config.A + 1);
  std::vector<Row> rows(rows_n);
  parallel_for(rows_n, resolve_threads(config.threads), [&](std::size_t i) {
    std::int64_t a = -config.A + static_cast<std::int64_t>(i);
    Row row;
    KahanSum sum_n, sum_sq;
    for (std::int64_t b = -config.B; b <= config.B; ++b) {
      std::int64_t n = counter.count(a, b);
      double diff = static_cast<double>(n) - prediction;
      sum_n.add(static_cast<double>(n));
      sum_sq.add(diff * diff);
      if (std::abs(diff) > threshold) ++row.exceptional;
    }
    row.sum_n = sum_n.value();
    row.sum_sq = sum_sq.value();
    rows[i] = row;
  });

  double denom = 4.0 * static_cast<double>(config.A) * static_cast<double>(config.B);
  KahanSum mean, moment;
  PerCurveAccumulation acc;
  for (const Row& row : rows) {
    mean.add(row.sum_n / denom);
    moment.add(row.sum_sq / denom);
    acc.exceptional += row.exceptional;
  }
  acc.mean = mean.value();
  acc.second_moment = moment.value();
  return acc;
}

double census_threshold(const ExperimentConfig& config) {
  if (config.c <= 0.0) return std::numeric_limits<double>::infinity();
  double x = static_cast<double>(config.x);
  return std::sqrt(x) / std::pow(std::log(x), config.c);
}

}  // namespace

AverageReport second_moment(const ExperimentConfig& config) {
  auto start = std::chrono::steady_clock::now();
  validate_config(config);
  AverageReport report;
  report.config = config;
  hypothesis_warnings(config, report.warnings);
  report.prediction = analytic::constant_Cr(config.r) *
                      analytic::pi_half(static_cast<double>(config.x)).pi_half;
  auto acc = per_curve_scan(config, report.prediction,
                            std::numeric_limits<double>::infinity());
  report.mean = acc.mean;
  report.second_moment = acc.second_moment;
  theorem4_budget(config, report);
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

AverageReport exceptional_census(const ExperimentConfig& config, double d) {
  auto start = std::chrono::steady_clock::now();
  validate_config(config);
  if (config.c > 0.0 && d <= 2.0 * config.c)
    throw ArithError("exceptional_census: d must exceed 2c");
  AverageReport report;
  report.config = config;
  hypothesis_warnings(config, report.warnings);
  report.prediction = analytic::constant_Cr(config.r) *
                      analytic::pi_half(static_cast<double>(config.x)).pi_half;
  report.threshold = census_threshold(config);
  auto acc = per_curve_scan(config, report.prediction, *report.threshold);
  report.mean = acc.mean;
  report.second_moment = acc.second_moment;
  report.exceptional_count = acc.exceptional;
  theorem4_budget(config, report);
  double x = static_cast<double>(config.x);
  double AB = static_cast<double>(config.A) * static_cast<double>(config.B);
  // Theorem 3 writes AB/log^d z; the exponent base here is x.
  report.error_budget.push_back(
      {"A*B/log^d(x)", AB / std::pow(std::log(x), d)});
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string report_json(const AverageReport& report, bool with_timing) {
  json j;
  j["config"] = {{"x", report.config.x}, {"A", report.config.A},
                 {"B", report.config.B}, {"r", report.config.r},
                 {"c", report.config.c}};
  j["mean"] = report.mean;
  j["prediction"] = report.prediction;
  if (report.second_moment) j["second_moment"] = *report.second_moment;
  if (report.exceptional_count) j["exceptional_count"] = *report.exceptional_count;
  if (report.threshold) {
    if (std::isinf(*report.threshold))
      j["threshold"] = "inf";
    else
      j["threshold"] = *report.threshold;
  }
  j["error_budget"] = json::array();
  for (const ErrorTerm& term : report.error_budget)
    j["error_budget"].push_back({{"name", term.name}, {"value", term.value}});
  if (!report.warnings.empty()) j["warnings"] = report.warnings;
  if (with_timing) j["timing"] = report.seconds;
  return j.dump(2);
}

std::string report_csv(const AverageReport& report) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "p,N_r,H_rp,contrib\n";
  out.precision(17);
  for (const PerPrimeRow& row : report.per_prime_rows)
    out << row.p << ',' << row.N_r << ',' << row.H_rp << ',' << row.contrib << '\n';
  return out.str();
}

}  // namespace ltavg::experiments
