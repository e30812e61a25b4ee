#include <benchmark/benchmark.h>

#include "mibench/estimators.hpp"
#include "mibench/knn_index.hpp"
#include "mibench/sampling.hpp"
#include "oracles.hpp"

namespace {

mibench::Sample normal_sample(std::size_t n) {
  mibench::DistributionSpec spec;
  spec.rho = 0.5;
  return mibench::draw_sample(spec, n, 42);
}

void BM_IndexBuild(benchmark::State& state) {
  const auto s = normal_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    mibench::KnnIndex index(s.x, s.y);
    benchmark::DoNotOptimize(index.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IndexBuild)->RangeMultiplier(10)->Range(1000, 100000);

void BM_KsgIndexed(benchmark::State& state) {
  const auto s = normal_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mibench::ksg_mi(s, 4));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KsgIndexed)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

void BM_KsgNaive(benchmark::State& state) {
  const auto s = normal_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mibench::oracle::naive_ksg(s, 4));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KsgNaive)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_Plugin(benchmark::State& state) {
  const auto s = normal_sample(static_cast<std::size_t>(state.range(0)));
  const auto bins = mibench::default_bin_count(s.size());
  for (auto _ : state) benchmark::DoNotOptimize(mibench::plugin_mi(s, bins, false));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Plugin)->RangeMultiplier(10)->Range(1000, 100000);

}  // namespace

BENCHMARK_MAIN();
