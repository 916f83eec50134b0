#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "sif/sif.hpp"

namespace {

using namespace sif;

// Dense coupling with rho(X) roughly 0.8 and unit offsets.
AffineMapping make_affine(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix x(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = u(rng) * 1.6 / static_cast<double>(n);
  return AffineMapping(std::move(x), PositiveVector(Vec(n, 1.0)));
}

// m cells, two users each, cross gains an order below own gains.
LoadScenario make_load(std::size_t m) {
  std::mt19937_64 rng(m);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  LoadScenario s;
  const std::size_t users = 2 * m;
  s.gains.assign(m, Vec(users, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    s.assignment.push_back({2 * i, 2 * i + 1});
    for (std::size_t j = 0; j < users; ++j) s.gains[i][j] = j / 2 == i ? 0.5 + 0.5 * u(rng) : 0.05 * u(rng);
  }
  s.demands.assign(users, 2e5);
  s.resource_blocks = 100;
  s.rb_bandwidth = 1.8e5;
  s.noise = 1e-9;
  s.power.assign(m, 1.0);
  return s;
}

void BM_FixedPointAffine(benchmark::State& state) {
  const AffineMapping m = make_affine(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fixed_point(m));
}
BENCHMARK(BM_FixedPointAffine)->RangeMultiplier(4)->Range(4, 256);

void BM_FixedPointLoad(benchmark::State& state) {
  const LoadMapping m = LoadMapping::uncapped(make_load(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(fixed_point(m));
}
BENCHMARK(BM_FixedPointLoad)->RangeMultiplier(4)->Range(4, 64);

void BM_SolveCanonical(benchmark::State& state) {
  const AffineMapping m = make_affine(static_cast<std::size_t>(state.range(0)));
  const MonotoneNorm a = MonotoneNorm::max();
  for (auto _ : state) benchmark::DoNotOptimize(solve_canonical(m, a, 1e3));
}
BENCHMARK(BM_SolveCanonical)->RangeMultiplier(4)->Range(4, 256);

void BM_CollatzWielandt(benchmark::State& state) {
  const AffineMapping m = make_affine(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(collatz_wielandt(m.coupling()));
}
BENCHMARK(BM_CollatzWielandt)->RangeMultiplier(4)->Range(4, 256);

void BM_BudgetLadder(benchmark::State& state) {
  const LoadMapping m = LoadMapping::uncapped(make_load(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(budget_ladder_radius(m));
}
BENCHMARK(BM_BudgetLadder)->RangeMultiplier(4)->Range(4, 64);

void BM_EstimateAsymptotic(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const LoadMapping m = LoadMapping::uncapped(make_load(n));
  const NonnegVector x = NonnegVector::filled(n, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_asymptotic(m, x));
}
BENCHMARK(BM_EstimateAsymptotic)->RangeMultiplier(4)->Range(4, 64);

}  // namespace

BENCHMARK_MAIN();
