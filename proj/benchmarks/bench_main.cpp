#include <benchmark/benchmark.h>

#include "mobilitylab/aeropower.hpp"
#include "mobilitylab/dynamics.hpp"
#include "mobilitylab/rangeopt.hpp"

namespace ml = mobilitylab;

static void BM_InducedVelocity(benchmark::State& state) {
  const auto env = ml::titan_defaults();
  const double area = ml::VehicleParams{}.rotor_disk_area();
  double v = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ml::induced_velocity(0.3, env, area, v, -0.3));
    v = v > 5.0 ? 0.0 : v + 0.01;
  }
}
BENCHMARK(BM_InducedVelocity);

static void BM_RangeSweep(benchmark::State& state) {
  const auto config = ml::default_scenario();
  const auto mode = state.range(0) == 0 ? ml::MobilityMode::Rolling : ml::MobilityMode::Flying;
  const auto grid = ml::default_velocity_grid(mode);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ml::range_sweep(config, mode, grid));
  }
}
BENCHMARK(BM_RangeSweep)->Arg(0)->Arg(1);

static void BM_TradeoffGrid(benchmark::State& state) {
  const auto config = ml::default_scenario();
  ml::TradeoffOptions options;
  options.resolution = static_cast<std::size_t>(state.range(0));
  options.execution = state.range(1) == 0 ? ml::Execution::Sequential : ml::Execution::Parallel;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ml::tradeoff_grid(config, options));
  }
}
BENCHMARK(BM_TradeoffGrid)->Args({20, 0})->Args({20, 1})->Unit(benchmark::kMillisecond);

static void BM_SimulateClosedLoop(benchmark::State& state) {
  const auto config = ml::default_scenario();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ml::simulate_closed_loop(config, [](double) { return 0.7; }, 10.0, 0.001));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_SimulateClosedLoop)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
