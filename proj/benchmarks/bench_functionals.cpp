#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "ionlab/functionals.hpp"
#include "ionlab/optimizer.hpp"
#include "ionlab/random.hpp"
#include "ionlab/smoothed.hpp"
#include "ionlab/tf_atom.hpp"

namespace {

ionlab::PointConfiguration cloud(int N) {
  ionlab::Rng rng(42);
  std::vector<double> c(static_cast<std::size_t>(3 * N));
  for (double& v : c) v = rng.normal();
  return {3, c};
}

void BM_QMinimax(benchmark::State& state) {
  const auto c = cloud(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ionlab::q_minimax(c));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_QMinimax)->RangeMultiplier(2)->Range(8, 512)->Complexity(benchmark::oNSquared);

void BM_BetaRatioGradient(benchmark::State& state) {
  const auto c = cloud(static_cast<int>(state.range(0)));
  std::vector<double> g(c.coords().size());
  for (auto _ : state) benchmark::DoNotOptimize(ionlab::smooth::beta_ratio(3, c.coords(), g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BetaRatioGradient)->RangeMultiplier(2)->Range(8, 512)->Complexity(benchmark::oNSquared);

void BM_MeasureRatio(benchmark::State& state) {
  const auto K = static_cast<std::size_t>(state.range(0));
  std::vector<double> r(K), w(K, 1.0);
  for (std::size_t k = 0; k < K; ++k) r[k] = std::exp(-4.0 + 8.0 * static_cast<double>(k) / K);
  const auto m = ionlab::RadialMeasure::from_masses(r, w);
  for (auto _ : state) benchmark::DoNotOptimize(ionlab::measure_ratio(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MeasureRatio)->RangeMultiplier(4)->Range(16, 16384)->Complexity(benchmark::oN);

void BM_MinimizeQ(benchmark::State& state) {
  ionlab::SearchOptions opts;
  opts.restarts = 2;
  opts.jobs = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ionlab::minimize_config(ionlab::FunctionalKind::q_minimax(), static_cast<int>(state.range(0)), 3, opts));
  }
}
BENCHMARK(BM_MinimizeQ)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SolveTF(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ionlab::solve_tf(10.0, 10.0, 1.0));
}
BENCHMARK(BM_SolveTF)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
