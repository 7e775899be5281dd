#include "ltavg/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "ltavg/analytic.hpp"
#include "ltavg/arith.hpp"
#include "ltavg/cache.hpp"
#include "ltavg/classnum.hpp"
#include "ltavg/curves.hpp"

using namespace ltavg;
using experiments::ExperimentConfig;

namespace {

bool rationally_singular(std::int64_t a, std::int64_t b) {
  return 4 * a * a * a + 27 * b * b == 0;
}

std::filesystem::path fresh_dir(const char* tag) {
  auto dir = std::filesystem::temp_directory_path() /
             (std::string("ltavg_test_") + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("box_residue_count matches a direct scan") {
  for (std::int64_t p : {5, 7, 13})
    for (std::int64_t A : {0, 1, 4, 9, 25, 100})
      for (std::int64_t residue = 0; residue < p; ++residue) {
        std::int64_t direct = 0;
        for (std::int64_t n = -A; n <= A; ++n)
          if (arith::mod_reduce(n, p) == residue) ++direct;
        CHECK(experiments::box_residue_count(residue, p, A) == direct);
      }
  CHECK_THROWS_AS(experiments::box_residue_count(0, 5, -1), arith::ArithError);
}

TEST_CASE("curve_pi_r against a point-count oracle") {
  // Count points directly for each prime in range instead of reusing the
  // library's character-sum trace.
  auto oracle = [](std::int64_t a, std::int64_t b, std::int64_t x, std::int64_t r,
                   bool exclude) {
    std::int64_t n = 0;
    for (std::int64_t p : arith::sieve_primes(x)) {
      if (p <= 3 || static_cast<double>(p) <= analytic::B_of_r(r)) continue;
      std::int64_t ap = arith::mod_reduce(a, p), bp = arith::mod_reduce(b, p);
      if (exclude && ((a != 0 && ap == 0) || (b != 0 && bp == 0))) continue;
      if ((4 * ap * ap % p * ap + 27 * bp * bp) % p == 0) continue;
      std::int64_t points = 1;
      for (std::int64_t u = 0; u < p; ++u)
        for (std::int64_t v = 0; v < p; ++v)
          if (v * v % p == ((u * u % p) * u + ap * u + bp) % p) ++points;
      if (p + 1 - points == r) ++n;
    }
    return n;
  };
  for (auto [a, b] : {std::pair{1, 1}, std::pair{-2, 3}, std::pair{0, 5},
                      std::pair{30, -7}})
    for (std::int64_t r : {0, 1, 2, -3}) {
      CHECK(experiments::curve_pi_r(a, b, 60, r) == oracle(a, b, 60, r, true));
      CHECK(experiments::curve_pi_r(a, b, 60, r, false) == oracle(a, b, 60, r, false));
    }
  CHECK_THROWS_AS(experiments::curve_pi_r(0, 0, 60, 1), curves::CurveError);
  CHECK_THROWS_AS(experiments::curve_pi_r(-3, 2, 60, 1), curves::CurveError);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(experiments::average_pi_r({4, 10, 10, 0}), arith::ArithError);
  CHECK_THROWS_AS(experiments::average_pi_r({30, 0, 10, 0}), arith::ArithError);
  CHECK_THROWS_AS(experiments::second_moment({30, 10, 0, 0}), arith::ArithError);
}

TEST_CASE("residue-class mean equals the brute-force mean") {
  for (std::int64_t r : {0, 1, 2, -1}) {
    ExperimentConfig config{30, 20, 20, r};
    auto report = experiments::average_pi_r(config);
    CHECK(report.mean == experiments::average_pi_r_brute(config));
    CHECK(report.prediction ==
          doctest::Approx(analytic::constant_Cr(r) * analytic::pi_half(30.0).pi_half));
    CHECK(report.per_prime_rows.size() > 0);
    CHECK(report.error_budget.size() == 3);
  }
}

TEST_CASE("residue-class mean equals the box sum of curve_pi_r") {
  ExperimentConfig config{30, 15, 12, 1};
  auto report = experiments::average_pi_r(config);
  std::int64_t total = 0;
  for (std::int64_t a = -config.A; a <= config.A; ++a)
    for (std::int64_t b = -config.B; b <= config.B; ++b) {
      if (rationally_singular(a, b)) continue;  // all reductions singular
      total += experiments::curve_pi_r(a, b, config.x, config.r, false);
    }
  double mean = static_cast<double>(total) /
                (4.0 * static_cast<double>(config.A) * static_cast<double>(config.B));
  CHECK(report.mean == mean);
}

TEST_CASE("per-prime rows are consistent") {
  ExperimentConfig config{40, 25, 25, 2};
  auto report = experiments::average_pi_r(config);
  double sum = 0.0;
  for (const auto& row : report.per_prime_rows) {
    CHECK(row.N_r == curves::trace_distribution(row.p).count(config.r));
    CHECK(row.H_rp == classnum::kronecker_H(config.r * config.r - 4 * row.p).H);
    sum += row.contrib;
  }
  CHECK(sum == doctest::Approx(report.mean).epsilon(1e-12));
}

TEST_CASE("second moment matches a per-curve oracle") {
  ExperimentConfig config{30, 12, 12, 1};
  auto report = experiments::second_moment(config);
  REQUIRE(report.second_moment.has_value());
  double pred = report.prediction;
  double sum_sq = 0.0, sum_n = 0.0;
  for (std::int64_t a = -config.A; a <= config.A; ++a)
    for (std::int64_t b = -config.B; b <= config.B; ++b) {
      std::int64_t n = rationally_singular(a, b)
                           ? 0
                           : experiments::curve_pi_r(a, b, config.x, config.r);
      sum_n += static_cast<double>(n);
      sum_sq += (static_cast<double>(n) - pred) * (static_cast<double>(n) - pred);
    }
  double denom = 4.0 * static_cast<double>(config.A) * static_cast<double>(config.B);
  CHECK(report.mean == doctest::Approx(sum_n / denom).epsilon(1e-12));
  CHECK(*report.second_moment == doctest::Approx(sum_sq / denom).epsilon(1e-12));
  CHECK(report.error_budget.size() == 4);
}

TEST_CASE("exceptional census") {
  ExperimentConfig config{30, 12, 12, 1};
  config.c = 0.5;
  auto report = experiments::exceptional_census(config, 2.0);
  REQUIRE(report.exceptional_count.has_value());
  REQUIRE(report.threshold.has_value());
  CHECK(*report.threshold ==
        doctest::Approx(std::sqrt(30.0) / std::pow(std::log(30.0), 0.5)));
  std::int64_t direct = 0;
  for (std::int64_t a = -config.A; a <= config.A; ++a)
    for (std::int64_t b = -config.B; b <= config.B; ++b) {
      std::int64_t n = rationally_singular(a, b)
                           ? 0
                           : experiments::curve_pi_r(a, b, config.x, config.r);
      if (std::abs(static_cast<double>(n) - report.prediction) > *report.threshold)
        ++direct;
    }
  CHECK(*report.exceptional_count == direct);
  CHECK(report.error_budget.back().name == "A*B/log^d(x)");

  // c <= 0 disables the threshold; nothing is exceptional.
  ExperimentConfig open = config;
  open.c = 0.0;
  auto none = experiments::exceptional_census(open, 2.0);
  CHECK(*none.exceptional_count == 0);
  CHECK(std::isinf(*none.threshold));

  CHECK_THROWS_AS(experiments::exceptional_census(config, 1.0), arith::ArithError);
}

TEST_CASE("hypothesis warnings") {
  auto small = experiments::average_pi_r({100, 5, 5, 0});
  CHECK(small.warnings.size() == 2);
  auto large = experiments::average_pi_r({30, 200, 200, 0});
  CHECK(large.warnings.empty());
}

TEST_CASE("memory budget guard") {
  CHECK_THROWS_AS(experiments::average_pi_r({20000, 10, 10, 0}),
                  experiments::ResourceError);
}

TEST_CASE("reports are deterministic across thread counts") {
  ExperimentConfig base{60, 40, 40, 1};
  auto one = experiments::average_pi_r(base);
  std::string expected = experiments::report_json(one);
  for (int threads : {2, 4, 8}) {
    ExperimentConfig config = base;
    config.threads = threads;
    CHECK(experiments::report_json(experiments::average_pi_r(config)) == expected);
    CHECK(experiments::report_csv(experiments::average_pi_r(config)) ==
          experiments::report_csv(one));
  }
  ExperimentConfig moment_base = base;
  auto m1 = experiments::second_moment(moment_base);
  moment_base.threads = 4;
  CHECK(experiments::report_json(experiments::second_moment(moment_base)) ==
        experiments::report_json(m1));
}

TEST_CASE("json carries timing only on request") {
  auto report = experiments::average_pi_r({30, 10, 10, 0});
  CHECK(experiments::report_json(report).find("timing") == std::string::npos);
  CHECK(experiments::report_json(report, true).find("timing") != std::string::npos);
}

TEST_CASE("csv shape") {
  auto report = experiments::average_pi_r({30, 10, 10, 0});
  std::string csv = experiments::report_csv(report);
  CHECK(csv.rfind("p,N_r,H_rp,contrib\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == report.per_prime_rows.size() + 1);
}

TEST_CASE("trace cache round trip") {
  auto dir = fresh_dir("cache");
  {
    cache::TraceCache cache(dir);
    auto dist = cache.get(13, 2);
    auto direct = curves::trace_distribution(13, 2);
    CHECK(dist.counts == direct.counts);
    CHECK(dist.membership == direct.membership);
    cache.get(13, -3);
    cache.get(17, std::nullopt);
  }
  CHECK(std::filesystem::exists(dir / "index.tsv"));
  CHECK(std::filesystem::exists(dir / "p_13.bin"));
  {
    // A fresh instance must serve from disk.
    cache::TraceCache cache(dir);
    auto dist = cache.get(13, -3);
    auto direct = curves::trace_distribution(13, -3);
    CHECK(dist.counts == direct.counts);
    CHECK(dist.membership == direct.membership);
    CHECK(cache.get(17, std::nullopt).counts == curves::trace_distribution(17).counts);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("corrupt cache files are rebuilt") {
  auto dir = fresh_dir("cache_corrupt");
  {
    cache::TraceCache cache(dir);
    cache.get(13, 2);
  }
  // Truncate the data file to force a rebuild.
  std::filesystem::resize_file(dir / "p_13.bin", 4);
  {
    cache::TraceCache cache(dir);
    auto dist = cache.get(13, 2);
    auto direct = curves::trace_distribution(13, 2);
    CHECK(dist.counts == direct.counts);
    CHECK(dist.membership == direct.membership);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("memory-only cache works without a directory") {
  cache::TraceCache cache({});
  auto dist = cache.get(11, 0);
  CHECK(dist.counts == curves::trace_distribution(11).counts);
  cache.clear_memory();
  CHECK(cache.get(11, 0).counts == curves::trace_distribution(11).counts);
}

TEST_CASE("experiments run against a disk cache match the memory path") {
  auto dir = fresh_dir("cache_experiment");
  ExperimentConfig config{40, 20, 20, 1};
  auto memory = experiments::average_pi_r(config);
  config.cache_dir = dir.string();
  auto cold = experiments::average_pi_r(config);
  auto warm = experiments::average_pi_r(config);
  CHECK(experiments::report_json(cold) == experiments::report_json(memory));
  CHECK(experiments::report_json(warm) == experiments::report_json(memory));
  std::filesystem::remove_all(dir);
}
