#include "borromean/parity.hpp"
#include "borromean/product.hpp"
#include "borromean/schmidt.hpp"
#include "borromean/search.hpp"

#include <benchmark/benchmark.h>

using namespace borromean;

namespace {

void BM_PartialTrace(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const DensityMatrix rho = density_of(haar_random_state(SiteDims::uniform(sites, 2), 1));
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, sites / 2));
  state.SetLabel("D=" + std::to_string(rho.dims().total()));
}
BENCHMARK(BM_PartialTrace)->DenseRange(3, 8);

void BM_PartialTracePure(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const PureState psi = haar_random_state(SiteDims::uniform(sites, 2), 1);
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(psi, sites / 2));
}
BENCHMARK(BM_PartialTracePure)->DenseRange(3, 10);

void BM_MaxBorromeanDeviation(benchmark::State& state) {
  const PureState psi = haar_random_state(SiteDims::uniform(static_cast<int>(state.range(0)), 2), 2);
  for (auto _ : state) benchmark::DoNotOptimize(max_borromean_frobenius_deviation(psi));
}
BENCHMARK(BM_MaxBorromeanDeviation)->DenseRange(3, 7);

void BM_BorromeanReport(benchmark::State& state) {
  const PureState psi = haar_random_state(SiteDims::uniform(static_cast<int>(state.range(0)), 2), 3);
  for (auto _ : state) benchmark::DoNotOptimize(borromean_deviation(psi));
}
BENCHMARK(BM_BorromeanReport)->DenseRange(3, 6);

void BM_ClosestProductState(benchmark::State& state) {
  const PureState psi = haar_random_state(SiteDims::uniform(3, static_cast<int>(state.range(0))), 4);
  for (auto _ : state) benchmark::DoNotOptimize(closest_product_state(psi, 16, kDefaultSweepTolerance));
}
BENCHMARK(BM_ClosestProductState)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

void BM_NormalForm(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const PureState psi = haar_random_state(SiteDims::uniform(3, d), 5);
  const int restarts = default_restart_count(psi.dims());
  for (auto _ : state) benchmark::DoNotOptimize(normal_form(psi, restarts, kDefaultSweepTolerance));
}
BENCHMARK(BM_NormalForm)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_SearchRestart(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(counterexample_search(SiteDims::uniform(3, 2), 0.05, 1, seed++));
}
BENCHMARK(BM_SearchRestart)->Unit(benchmark::kMillisecond);

void BM_ParityComparison(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compare_to_classical(n));
}
BENCHMARK(BM_ParityComparison)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
