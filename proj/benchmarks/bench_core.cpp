#include <benchmark/benchmark.h>

#include "ltavg/analytic.hpp"
#include "ltavg/classnum.hpp"
#include "ltavg/curves.hpp"
#include "ltavg/experiments.hpp"

namespace {

void BM_TraceDistributionFast(benchmark::State& state) {
  std::int64_t p = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ltavg::curves::trace_distribution(p, std::nullopt, ltavg::curves::Method::fast));
  state.SetComplexityN(p);
}
BENCHMARK(BM_TraceDistributionFast)->Arg(101)->Arg(499)->Arg(997)->Complexity();

void BM_TraceDistributionBrute(benchmark::State& state) {
  std::int64_t p = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ltavg::curves::trace_distribution(p, std::nullopt, ltavg::curves::Method::brute));
  state.SetComplexityN(p);
}
BENCHMARK(BM_TraceDistributionBrute)->Arg(31)->Arg(61)->Arg(101)->Complexity();

void BM_KroneckerH(benchmark::State& state) {
  std::int64_t p = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(ltavg::classnum::kronecker_H(1 - 4 * p).H);
}
BENCHMARK(BM_KroneckerH)->Arg(997)->Arg(99991)->Arg(999983);

void BM_EulerProduct(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(ltavg::analytic::euler_product_Cr(1, state.range(0)).value);
}
BENCHMARK(BM_EulerProduct)->Arg(100000)->Arg(1000000);

void BM_PiHalf(benchmark::State& state) {
  double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ltavg::analytic::pi_half(x).pi_half);
}
BENCHMARK(BM_PiHalf)->Arg(1000)->Arg(1000000);

void BM_AveragePiR(benchmark::State& state) {
  ltavg::experiments::ExperimentConfig config{state.range(0), 200, 200, 1};
  for (auto _ : state)
    benchmark::DoNotOptimize(ltavg::experiments::average_pi_r(config).mean);
}
BENCHMARK(BM_AveragePiR)->Arg(100)->Arg(300);

}  // namespace

BENCHMARK_MAIN();
