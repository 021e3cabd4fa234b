// Parallel kernels against the serial brute-force reference on the same inputs.

#include "dyadic/dyadic_core.hpp"
#include "dyadic/gurov_reshetnyak.hpp"
#include "dyadic/interval_bmo.hpp"
#include "dyadic/step_function.hpp"
#include "reference.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace dyadic;

namespace {

DyadicFunction sample(int dim, int depth, bool nonnegative) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(dim * 100 + depth));
  std::uniform_int_distribution<long> draw(nonnegative ? 0 : -40, 40);
  std::vector<Rational> cells(std::size_t{1} << (dim * depth));
  for (auto& c : cells) c = make_rational(draw(rng), 7);
  return DyadicFunction(dim, depth, std::move(cells));
}

// Arguments: {dim, depth}.
void shapes(benchmark::internal::Benchmark* b) {
  b->Args({1, 6})->Args({1, 10})->Args({2, 4})->Args({2, 6})->Args({3, 3})->Args({3, 4});
}

void BM_BmoNorm_Table(benchmark::State& state) {
  const auto f = sample(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), false);
  for (auto _ : state) benchmark::DoNotOptimize(bmo_dyadic_norm(f));
}
BENCHMARK(BM_BmoNorm_Table)->Apply(shapes)->Unit(benchmark::kMillisecond);

void BM_BmoNorm_Reference(benchmark::State& state) {
  const auto f = sample(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), false);
  for (auto _ : state) benchmark::DoNotOptimize(reference::bmo_norm(f));
}
BENCHMARK(BM_BmoNorm_Reference)->Apply(shapes)->Unit(benchmark::kMillisecond);

void BM_Maximal_Table(benchmark::State& state) {
  const auto f = sample(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), false);
  for (auto _ : state) benchmark::DoNotOptimize(dyadic_maximal_function(f));
}
BENCHMARK(BM_Maximal_Table)->Apply(shapes)->Unit(benchmark::kMillisecond);

void BM_Maximal_Reference(benchmark::State& state) {
  const auto f = sample(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), false);
  for (auto _ : state) benchmark::DoNotOptimize(reference::maximal_function(f));
}
BENCHMARK(BM_Maximal_Reference)->Apply(shapes)->Unit(benchmark::kMillisecond);

void BM_GrProfile_Table(benchmark::State& state) {
  const auto f = sample(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), true);
  for (auto _ : state) benchmark::DoNotOptimize(gr_profile(f));
}
BENCHMARK(BM_GrProfile_Table)->Apply(shapes)->Unit(benchmark::kMillisecond);

void BM_GrProfile_Reference(benchmark::State& state) {
  const auto f = sample(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), true);
  for (auto _ : state) benchmark::DoNotOptimize(reference::gr_levels(f));
}
BENCHMARK(BM_GrProfile_Reference)->Apply(shapes)->Unit(benchmark::kMillisecond);

// Interval norm of f_d: exact region analysis against a 64-step endpoint grid (a lower bound only).
void BM_IntervalBmo_Exact(benchmark::State& state) {
  const auto g = rearrange_signed(sample(1, static_cast<int>(state.range(0)), false));
  for (auto _ : state) benchmark::DoNotOptimize(interval_bmo_norm(g));
  state.counters["pieces"] = static_cast<double>(g.values().size());
}
BENCHMARK(BM_IntervalBmo_Exact)->Arg(3)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_IntervalBmo_Grid64(benchmark::State& state) {
  const auto g = rearrange_signed(sample(1, static_cast<int>(state.range(0)), false));
  for (auto _ : state) benchmark::DoNotOptimize(reference::interval_grid_max(g, 64));
}
BENCHMARK(BM_IntervalBmo_Grid64)->Arg(3)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
