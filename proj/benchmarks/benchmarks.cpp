#include <benchmark/benchmark.h>

#include <vector>

#include "levychaos/chaos.hpp"
#include "levychaos/montecarlo.hpp"
#include "levychaos/partitions.hpp"
#include "levychaos/recursive.hpp"
#include "spec_builders.hpp"

namespace {

using namespace levychaos;
using levychaos::testing::atomic_triplet;
using levychaos::testing::constant_spec;

std::vector<int> orders_for(int n) { return std::vector<int>(static_cast<std::size_t>(n), 2); }

LevyTriplet mixed() { return atomic_triplet(1.0, {{1.0, 2.0}, {-0.5, 1.0}}); }

void BM_EnumerateRules(benchmark::State& state) {
  const auto orders = orders_for(static_cast<int>(state.range(0)));
  std::size_t count = 0;
  for (auto _ : state) {
    count = enumerate_rules(orders).size();
    benchmark::DoNotOptimize(count);
  }
  state.counters["rules"] = static_cast<double>(count);
}
BENCHMARK(BM_EnumerateRules)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

void BM_MomentPolynomial(benchmark::State& state) {
  const auto spec = constant_spec(orders_for(static_cast<int>(state.range(0))), mixed());
  for (auto _ : state) benchmark::DoNotOptimize(moment_polynomial(spec, {.threads = 1}));
}
BENCHMARK(BM_MomentPolynomial)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

void BM_LiteralMoment(benchmark::State& state) {
  const auto spec = constant_spec(orders_for(static_cast<int>(state.range(0))), mixed());
  MomentOptions options;
  options.literal_b_sum = true;
  options.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(moment_polynomial(spec, options));
}
BENCHMARK(BM_LiteralMoment)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

void BM_RecursiveProductMoment(benchmark::State& state) {
  const auto spec = constant_spec(orders_for(static_cast<int>(state.range(0))), mixed());
  for (auto _ : state) benchmark::DoNotOptimize(recursive_product_moment(spec));
}
BENCHMARK(BM_RecursiveProductMoment)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

void BM_ExpandProduct(benchmark::State& state) {
  const auto spec = constant_spec(orders_for(static_cast<int>(state.range(0))), mixed());
  for (auto _ : state) benchmark::DoNotOptimize(expand_product(spec).terms.size());
}
BENCHMARK(BM_ExpandProduct)->DenseRange(2, 3)->Unit(benchmark::kMicrosecond);

void BM_LevyCentralMoments(benchmark::State& state) {
  const auto triplet = mixed();
  for (auto _ : state) {
    benchmark::DoNotOptimize(levy_central_moments(triplet, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_LevyCentralMoments)->Arg(8)->Arg(16);

void BM_SimulateMoment(benchmark::State& state) {
  const auto spec = constant_spec({1, 1, 2}, atomic_triplet(1.0, {{1.0, 2.0}}));
  SimulationConfig config;
  config.n_paths = static_cast<std::size_t>(state.range(0));
  config.n_grid_steps = 64;
  config.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_moment(spec, 1.0, config).estimate);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateMoment)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
