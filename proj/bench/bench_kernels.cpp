// Serial reference versus OpenMP paths of the hot kernels.

#include <benchmark/benchmark.h>

#include "spdc/biphoton.hpp"
#include "spdc/interference.hpp"
#include "spdc/kernels.hpp"
#include "spdc/matching.hpp"

using namespace spdc;

namespace {

struct Setup {
  CoefficientDatabase db = load_database(SPDC_DEFAULT_DB);
  Medium medium = db.medium(Crystal::CTA);
  DegenerateDesign design = gvm1_design(medium, 20.0);
  CrystalGeometry geometry{30.0, design.poling_period_um, 25.0};
  PumpSpec pump{design.lambda_p_nm, 0.87};
};

const Setup& setup() {
  static const Setup s;
  return s;
}

Execution exec_of(const benchmark::State& state) {
  return state.range(1) ? Execution::Parallel : Execution::Serial;
}

void BM_JsaFill(benchmark::State& state) {
  const auto& s = setup();
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto grid = SpectralGrid::square(s.pump.omega_p() / 2, 16 * s.pump.sigma_p(), n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_jsa(s.medium, s.geometry, s.pump, grid, exec_of(state)));
  }
}

// Serial: direct double sum. Parallel: diagonal-grouped series over delays.
void BM_HomTrace(benchmark::State& state) {
  const auto& s = setup();
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto grid = SpectralGrid::square(s.pump.omega_p() / 2, 16 * s.pump.sigma_p(), n);
  const auto jsa = compute_jsa(s.medium, s.geometry, s.pump, grid);
  HomOptions opt;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(hom_trace(jsa, opt));
}

// Same algorithm on both paths, isolating the OpenMP speedup.
void BM_HomSeries(benchmark::State& state) {
  const auto& s = setup();
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto grid = SpectralGrid::square(s.pump.omega_p() / 2, 16 * s.pump.sigma_p(), n);
  const auto jsa = compute_jsa(s.medium, s.geometry, s.pump, grid);
  std::vector<double> tau(2049);
  for (std::size_t k = 0; k < tau.size(); ++k) tau[k] = (static_cast<double>(k) - 1024.0) * 1e-14;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::hom_series(jsa.values, grid.d_omega_s(), tau, exec_of(state)));
  }
}

void BM_PhaseMatchScan(benchmark::State& state) {
  const auto& s = setup();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        scan_over_temperature(s.medium, ScanCondition::PhaseMatch, 20.0, 120.0, 101, exec_of(state)));
  }
}

}  // namespace

BENCHMARK(BM_JsaFill)->ArgsProduct({{256, 512}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HomTrace)->ArgsProduct({{256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HomSeries)->ArgsProduct({{512}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhaseMatchScan)->ArgsProduct({{101}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
