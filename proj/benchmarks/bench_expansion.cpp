#include <benchmark/benchmark.h>

#include "arbor/expansion.hpp"
#include "arbor/generators.hpp"

using namespace arbor;

static void BM_ExactExpansion(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RngStream rng(1);
  const Graph g = random_regular(n, 6, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_expander_exact(g, 0.25, 1.5));
  }
}
BENCHMARK(BM_ExactExpansion)->DenseRange(12, 20, 4);

static void BM_SampledRefutation(benchmark::State& state) {
  RngStream rng(2);
  const Graph g = gnp(static_cast<std::size_t>(state.range(0)), 0.02, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(refute_expander_sampled(g, 0.1, 2.0, 500, 3));
  }
}
BENCHMARK(BM_SampledRefutation)->Arg(500)->Arg(2000);
