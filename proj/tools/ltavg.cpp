// Command-line front end: every verification and experiment as a
// subcommand with machine-readable output.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 resource error.

#include <complex>
#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ltavg/analytic.hpp"
#include "ltavg/arith.hpp"
#include "ltavg/characters.hpp"
#include "ltavg/classnum.hpp"
#include "ltavg/curves.hpp"
#include "ltavg/experiments.hpp"
#include "ltavg/verify.hpp"

namespace {

using json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kVerificationFailure = 1, kUsageError = 2, kResourceError = 3 };

struct GlobalOptions {
  std::string format = "json";
};

void emit(const GlobalOptions& opts, const json& j, const std::string& plain) {
  if (opts.format == "json")
    std::cout << j.dump(2) << '\n';
  else
    std::cout << plain << '\n';
}

int run_trace(const GlobalOptions& opts, std::int64_t p, std::int64_t a, std::int64_t b) {
  std::int64_t r = ltavg::curves::trace_of_frobenius({p, a, b});
  emit(opts, json{{"p", p}, {"a", a}, {"b", b}, {"trace", r}},
       "r=" + std::to_string(r));
  return kOk;
}

int run_distribution(const GlobalOptions& opts, std::int64_t p,
                     std::optional<std::int64_t> r) {
  auto dist = ltavg::curves::trace_distribution(p, r);
  json counts = json::object();
  for (std::int64_t t = -dist.rmax; t <= dist.rmax; ++t)
    if (dist.count(t) != 0) counts[std::to_string(t)] = dist.count(t);
  json j{{"p", p}, {"rmax", dist.rmax}, {"counts", counts},
         {"nonsingular_pairs", dist.nonsingular_pairs()}};
  std::string plain;
  for (std::int64_t t = -dist.rmax; t <= dist.rmax; ++t)
    if (dist.count(t) != 0)
      plain += std::to_string(t) + "\t" + std::to_string(dist.count(t)) + "\n";
  emit(opts, j, plain);
  return kOk;
}

int run_classnum(const GlobalOptions& opts, std::int64_t D) {
  auto rec = ltavg::classnum::kronecker_H(D);
  json terms = json::array();
  for (const auto& t : rec.decomposition)
    terms.push_back({{"f", t.f}, {"d", t.d}, {"h", t.h}});
  emit(opts, json{{"D", rec.D}, {"H", rec.H}, {"decomposition", terms}},
       "H(" + std::to_string(D) + ")=" + std::to_string(rec.H));
  return kOk;
}

int run_isoclasses(const GlobalOptions& opts, std::int64_t p, std::int64_t r) {
  auto s = ltavg::curves::iso_classes_with_trace(p, r);
  json reps = json::array();
  for (auto [u, v] : s.representatives) reps.push_back({u, v});
  emit(opts,
       json{{"p", p}, {"r", r}, {"class_count", s.class_count},
            {"nonzero_class_count", s.nonzero_class_count},
            {"representatives", reps}},
       "classes=" + std::to_string(s.class_count) +
           " I=" + std::to_string(s.nonzero_class_count));
  return kOk;
}

int run_charcheck(const GlobalOptions& opts, std::int64_t q) {
  auto table = ltavg::characters::CharacterTable::build(q);
  auto scan = ltavg::characters::polya_vinogradov_scan(table);
  auto moment = ltavg::characters::fourth_moment_ratio(table, q / 2 + 1);
  std::vector<std::complex<double>> coeffs(2 * static_cast<std::size_t>(q));
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    coeffs[i] = {1.0 / static_cast<double>(i + 1), 0.3 * static_cast<double>(i % 7)};
  auto sides = ltavg::characters::lemma5_check(table, coeffs);
  bool pv_ok = scan.max_abs_sum <= scan.bound;
  bool l5_ok = std::abs(sides.lhs - sides.rhs) <= 1e-9 * std::max(1.0, sides.rhs);
  emit(opts,
       json{{"q", q}, {"phi", table.phi()},
            {"polya_vinogradov", {{"max_abs_sum", scan.max_abs_sum},
                                  {"bound", scan.bound}, {"ok", pv_ok}}},
            {"lemma5", {{"lhs", sides.lhs}, {"rhs", sides.rhs}, {"ok", l5_ok}}},
            {"fourth_moment", {{"moment", moment.moment}, {"ratio", moment.ratio}}}},
       std::string("pv=") + (pv_ok ? "ok" : "FAIL") + " lemma5=" +
           (l5_ok ? "ok" : "FAIL"));
  return (pv_ok && l5_ok) ? kOk : kVerificationFailure;
}

int run_boxcount(const GlobalOptions& opts, std::int64_t p, std::int64_t r,
                 std::int64_t A, std::int64_t B) {
  auto d = ltavg::characters::box_count_via_characters(p, r, A, B);
  emit(opts,
       json{{"p", p}, {"r", r}, {"A", A}, {"B", B}, {"total", d.total},
            {"M", d.M}, {"E1", d.E1}, {"E2", d.E2}},
       "total=" + std::to_string(d.total));
  return kOk;
}

int run_constants(const GlobalOptions& opts, std::int64_t r, std::int64_t truncation) {
  auto c = ltavg::analytic::euler_product_Cr(r, truncation);
  emit(opts,
       json{{"r", r}, {"value", c.value}, {"truncation_prime", c.truncation_prime},
            {"tail_bound", c.tail_bound}},
       "C_" + std::to_string(r) + "=" + std::to_string(c.value));
  return kOk;
}

int run_lemma3(const GlobalOptions& opts, std::int64_t x, std::int64_t r) {
  auto res = ltavg::analytic::lemma3_partial_sum(x, r);
  auto rows = ltavg::classnum::lemma8_diagnostics(x, r);
  json diag = json::array();
  for (const auto& row : rows)
    diag.push_back({{"name", row.name}, {"sum", row.sum},
                    {"bound", row.bound}, {"ratio", row.ratio}});
  emit(opts,
       json{{"x", x}, {"r", r}, {"sum", res.sum}, {"prediction", res.prediction},
            {"ratio", res.ratio}, {"lemma8", diag}},
       "ratio=" + std::to_string(res.ratio));
  return kOk;
}

int emit_report(const GlobalOptions& opts, const ltavg::experiments::AverageReport& report,
                bool with_timing) {
  if (opts.format == "csv")
    std::cout << ltavg::experiments::report_csv(report);
  else if (opts.format == "plain")
    std::cout << "mean=" << report.mean << " prediction=" << report.prediction << '\n';
  else
    std::cout << ltavg::experiments::report_json(report, with_timing) << '\n';
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  std::cerr << "elapsed: " << report.seconds << " s\n";
  return kOk;
}

int run_verify_all(const GlobalOptions& opts, std::int64_t max_p) {
  auto results = ltavg::verify::verify_all(max_p);
  json j = json::array();
  for (const auto& r : results) {
    j.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    std::cerr << (r.passed ? "PASS" : "FAIL") << ' ' << r.name
              << (r.detail.empty() ? "" : "  " + r.detail) << '\n';
  }
  emit(opts, j, "");
  return ltavg::verify::all_passed(results) ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"average Frobenius-trace statistics of elliptic curves over F_p"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand

  GlobalOptions opts;
  app.add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "plain"}))
      ->capture_default_str();

  std::int64_t p = 5, a = 0, b = 0, r = 1, q = 7, D = -4;
  std::int64_t A = 100, B = 100, x = 100, truncation = 100000, max_p = 61;
  double c = 2.0, d = 5.0;
  int threads = 0;
  std::string cache_dir;
  bool with_timing = false;
  std::optional<std::int64_t> membership_r;

  auto* trace = app.add_subcommand("trace", "trace of Frobenius of one curve");
  trace->add_option("--p", p)->required();
  trace->add_option("--a", a)->required();
  trace->add_option("--b", b)->required();

  auto* distribution = app.add_subcommand("distribution", "per-prime trace histogram");
  distribution->add_option("--p", p)->required();
  distribution->add_option("--r", membership_r, "also build the membership table for r");

  auto* classnum_cmd = app.add_subcommand("classnum", "Kronecker class number H(D)");
  classnum_cmd->add_option("--D", D)->required();

  auto* isoclasses = app.add_subcommand("isoclasses", "isomorphism classes with trace r");
  isoclasses->add_option("--p", p)->required();
  isoclasses->add_option("--r", r)->required();

  auto* charcheck = app.add_subcommand("charcheck", "character-sum identities mod q");
  charcheck->add_option("--q", q)->required();

  auto* boxcount = app.add_subcommand("boxcount", "character-sum box count decomposition");
  boxcount->add_option("--p", p)->required();
  boxcount->add_option("--r", r)->required();
  boxcount->add_option("--A", A)->required();
  boxcount->add_option("--B", B)->required();

  auto* constants = app.add_subcommand("constants", "the average constant C_r");
  constants->add_option("--r", r)->required();
  constants->add_option("--truncation", truncation)->capture_default_str();

  auto* lemma3 = app.add_subcommand("lemma3", "partial sum of H_{r,p}/(2p) vs prediction");
  lemma3->add_option("--x", x)->required();
  lemma3->add_option("--r", r)->required();

  auto add_experiment_flags = [&](CLI::App* cmd) {
    cmd->add_option("--x", x)->required();
    cmd->add_option("--A", A)->required();
    cmd->add_option("--B", B)->required();
    cmd->add_option("--r", r)->required();
    cmd->add_option("--c", c)->capture_default_str();
    cmd->add_option("--threads", threads, "0 = available parallelism");
    cmd->add_option("--cache-dir", cache_dir);
    cmd->add_flag("--timing", with_timing, "include wall time in the JSON report");
  };
  auto* average = app.add_subcommand("average", "box average of pi^r vs C_r pi_1/2");
  add_experiment_flags(average);
  auto* moment = app.add_subcommand("moment", "second moment about the prediction");
  add_experiment_flags(moment);
  auto* census = app.add_subcommand("census", "exceptional-curve census");
  add_experiment_flags(census);
  census->add_option("--d", d)->capture_default_str();

  auto* verify = app.add_subcommand("verify-all", "full invariant suite");
  verify->add_option("--max-p", max_p)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    ltavg::experiments::ExperimentConfig config{x, A, B, r, c, threads, cache_dir};
    if (trace->parsed()) return run_trace(opts, p, a, b);
    if (distribution->parsed()) return run_distribution(opts, p, membership_r);
    if (classnum_cmd->parsed()) return run_classnum(opts, D);
    if (isoclasses->parsed()) return run_isoclasses(opts, p, r);
    if (charcheck->parsed()) return run_charcheck(opts, q);
    if (boxcount->parsed()) return run_boxcount(opts, p, r, A, B);
    if (constants->parsed()) return run_constants(opts, r, truncation);
    if (lemma3->parsed()) return run_lemma3(opts, x, r);
    if (average->parsed())
      return emit_report(opts, ltavg::experiments::average_pi_r(config), with_timing);
    if (moment->parsed())
      return emit_report(opts, ltavg::experiments::second_moment(config), with_timing);
    if (census->parsed())
      return emit_report(opts, ltavg::experiments::exceptional_census(config, d),
                         with_timing);
    if (verify->parsed()) return run_verify_all(opts, max_p);
  } catch (const ltavg::experiments::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return kResourceError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerificationFailure;
  }
  return kUsageError;
}
