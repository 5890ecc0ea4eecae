#include <benchmark/benchmark.h>

#include "numphase/cahill_glauber.hpp"
#include "numphase/reconstruct.hpp"
#include "numphase/states.hpp"
#include "numphase/wigner.hpp"

namespace {

using namespace numphase;

void BM_NpwFromDensity(benchmark::State& state) {
  const Truncation t(static_cast<int>(state.range(0)));
  const DensityMatrix rho = random_density(t, 7);
  const PhaseGrid grid = PhaseGrid::default_for(t);
  for (auto _ : state) benchmark::DoNotOptimize(npw_from_density(rho, grid));
}
BENCHMARK(BM_NpwFromDensity)->RangeMultiplier(2)->Range(16, 256);

void BM_ReconstructDensity(benchmark::State& state) {
  const Truncation t(static_cast<int>(state.range(0)));
  const NPWignerTable table = npw_from_density(random_density(t, 7), PhaseGrid::default_for(t));
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_density(table));
}
BENCHMARK(BM_ReconstructDensity)->RangeMultiplier(2)->Range(16, 256);

void BM_WsFromDensity(benchmark::State& state) {
  const Truncation t(static_cast<int>(state.range(0)));
  const DensityMatrix rho = random_density(t, 7);
  const PolarGrid grid = PolarGrid::default_for(t);
  for (auto _ : state) benchmark::DoNotOptimize(w_s_from_density(rho, grid, SParameter(0.0)));
}
BENCHMARK(BM_WsFromDensity)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

// Inverse map at s = 0: the step that dominates the Cahill-Glauber round trip.
void BM_DensityFromWs(benchmark::State& state) {
  const Truncation t(static_cast<int>(state.range(0)));
  const CGTable table = w_s_from_density(random_density(t, 7), PolarGrid::default_for(t), SParameter(0.0));
  for (auto _ : state) benchmark::DoNotOptimize(density_from_w_s_matrix(table, t));
}
BENCHMARK(BM_DensityFromWs)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
