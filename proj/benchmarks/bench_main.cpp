#include "pidpp/brute.hpp"
#include "pidpp/fixtures.hpp"
#include "pidpp/inference.hpp"
#include "pidpp/linalg.hpp"
#include "pidpp/rank_fpt.hpp"
#include "pidpp/treewidth_fpt.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace pidpp;

void BM_BruteZ2(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  FixtureRng rng(1);
  MatrixTuple t({random_psd(n, n, rng), random_psd(n, n, rng)});
  for (auto _ : state) benchmark::DoNotOptimize(z_m_brute(t));
}
BENCHMARK(BM_BruteZ2)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

void BM_RankZ2(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto r = static_cast<std::size_t>(state.range(1));
  FixtureRng rng(2);
  MatrixTuple t({random_psd(n, r, rng), random_psd(n, r, rng)});
  for (auto _ : state) benchmark::DoNotOptimize(zm_rank(t));
}
BENCHMARK(BM_RankZ2)->Args({20, 2})->Args({40, 2})->Args({20, 3})->Args({40, 3})->Unit(benchmark::kMillisecond);

void BM_TreewidthBand(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto b = static_cast<std::size_t>(state.range(1));
  MatrixTuple t({banded_random(n, b, std::nullopt, 3), banded_random(n, b, std::nullopt, 4)});
  NiceTreeDecomposition ntd = make_nice(decompose(sparsity_union(t)));
  state.counters["width"] = ntd.width();
  for (auto _ : state) benchmark::DoNotOptimize(zm_treewidth(t, ntd));
}
BENCHMARK(BM_TreewidthBand)->Args({25, 1})->Args({50, 1})->Args({100, 1})->Args({25, 2})->Args({50, 2})
    ->Unit(benchmark::kMillisecond);

void BM_MinFill(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SparsityGraph g = band_graph(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(g));
}
BENCHMARK(BM_MinFill)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

void BM_SampleBrute(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  FixtureRng rng(5);
  MatrixTuple t({random_psd(n, n, rng), random_psd(n, n, rng)});
  NormalizerOracle oracle(Strategy::brute);
  Sampler sampler(t, oracle);
  std::mt19937_64 gen(9);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(gen));
}
BENCHMARK(BM_SampleBrute)->Arg(6)->Arg(10)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
