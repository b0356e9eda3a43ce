#include <benchmark/benchmark.h>

#include "arbor/embedder.hpp"
#include "arbor/generators.hpp"
#include "arbor/pipeline.hpp"
#include "arbor/splitter.hpp"

using namespace arbor;

static void BM_SplitDegrees(benchmark::State& state) {
  RngStream rng(5);
  const Graph g = random_regular(1000, 30, rng);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(split_degrees(g, 3, ++seed));
  }
}
BENCHMARK(BM_SplitDegrees)->Unit(benchmark::kMillisecond);

static void BM_EmbedRootedTree(benchmark::State& state) {
  RngStream rng(6);
  const Graph g = gnp(1000, 0.03, rng);
  const RootedTree t = random_bounded_degree_tree(static_cast<std::size_t>(state.range(0)), 3, 7);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(embed_rooted_tree(g, t, 0));
    } catch (const SearchFailure&) {
    }
  }
}
BENCHMARK(BM_EmbedRootedTree)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_NearlySpanning(benchmark::State& state) {
  RngStream rng(8);
  const Graph g = gnp(1000, 30.0 / 1000, rng);
  const RootedTree t = random_bounded_degree_tree(600, 3, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(embed_nearly_spanning(g, t, Rational{2, 5}, 10));
  }
}
BENCHMARK(BM_NearlySpanning)->Unit(benchmark::kMillisecond);
