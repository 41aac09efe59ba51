#include <benchmark/benchmark.h>

#include "entcat/entcat.hpp"

using namespace entcat;

namespace {

TransformQuery random_query(std::size_t n, std::uint64_t seed) {
  auto rng = substream(seed, n);
  return {sample_sorted_simplex(n, rng), sample_sorted_simplex(n, rng)};
}

// One Monte Carlo trial: sample chi, two merges, one majorization pass.
void BM_Trial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto q = random_query(n, 3);
  TrialWorkspace ws(n, n, k);
  std::uint64_t t = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ws.run_trial(q, 1, t++, 1e-12));
  state.counters["nk"] = static_cast<double>(n * k);
  state.SetComplexityN(static_cast<std::int64_t>(n * k));
}
BENCHMARK(BM_Trial)->Args({8, 4})->Args({16, 8})->Args({32, 16})->Args({64, 32})->Complexity();

void BM_TensorSpectrum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto rng = substream(5, n);
  const auto a = sample_sorted_simplex(n, rng);
  const auto b = sample_sorted_simplex(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(tensor_spectrum(a, b));
  state.SetComplexityN(static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_TensorSpectrum)->RangeMultiplier(2)->Range(4, 64)->Complexity();

// Whole search with a fixed budget on a pair that never succeeds.
void BM_SearchBudget(benchmark::State& state) {
  const TransformQuery q{make_osc({0.8, 0.2}), make_osc({0.75, 0.25})};
  const SearchConfig cfg{.k = 4, .big_number = static_cast<std::uint64_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_standard_catalyst(q, cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SearchBudget)->RangeMultiplier(10)->Range(10, 10000)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
