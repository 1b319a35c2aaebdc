// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "lienard/oracle.hpp"
#include "lienard/presets.hpp"
#include "lienard/simulator.hpp"
#include "support/random_systems.hpp"

using namespace lienard;

namespace {

std::vector<LienardSystem> sweep_systems() {
  std::mt19937_64 rng(901);
  std::vector<LienardSystem> out;
  for (int i = 0; i < 32; ++i) {
    const SwitchCase k = i % 2 ? SwitchCase::SwitchX : SwitchCase::SwitchY;
    out.push_back(testing::random_system(rng, k, testing::odd_shape(k)));
  }
  return out;
}

void oracle_sweep_bench(benchmark::State& state, Execution exec) {
  const auto systems = sweep_systems();
  const std::vector<double> hs{0.5, 1.0, 2.0, 3.0};
  for (auto _ : state) benchmark::DoNotOptimize(oracle_sweep(systems, hs, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(systems.size() * hs.size()));
}

void displacement_bench(benchmark::State& state, Execution exec) {
  const LienardSystem sys = load_preset("example1");
  const PlanarField field = PlanarField::from_system(sys, 0.02, 0.0004);
  SimConfig config;
  std::vector<double> radii;
  for (int i = 0; i < 64; ++i) radii.push_back(1.0 + 5.5 * i / 63.0);
  for (auto _ : state) benchmark::DoNotOptimize(scan_displacement(field, radii, config, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(radii.size()));
}

}  // namespace

BENCHMARK_CAPTURE(oracle_sweep_bench, Serial, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(oracle_sweep_bench, Parallel, Execution::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(displacement_bench, Serial, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(displacement_bench, Parallel, Execution::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
