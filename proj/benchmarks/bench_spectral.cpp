#include <benchmark/benchmark.h>

#include "arbor/generators.hpp"
#include "arbor/spectral.hpp"

using namespace arbor;

static void BM_SecondEigenvalue(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto method = state.range(1) == 0 ? EigenMethod::exact_dense : EigenMethod::iterative;
  RngStream rng(4);
  const Graph g = random_regular(n, 10, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(second_eigenvalue(g, method));
  }
}
BENCHMARK(BM_SecondEigenvalue)
    ->Args({200, 0})
    ->Args({200, 1})
    ->Args({1000, 0})
    ->Args({1000, 1})
    ->Unit(benchmark::kMillisecond);
