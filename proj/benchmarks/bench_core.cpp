#include <benchmark/benchmark.h>

#include <vector>

#include "emsr/ensemble.hpp"
#include "emsr/estimation.hpp"
#include "emsr/magnetostatics.hpp"
#include "emsr/protocols.hpp"

using namespace emsr;

namespace {
const SpinSpecies electron = electron_species();
const BeamKinematics kin200 = beam_kinematics(200e3);
const BiasField field_z = bias_field(electron, 1.8, Vec3::UnitZ());
}  // namespace

static void PhaseQuadrature(benchmark::State& state) {
  const DipoleSource src(electron.mu, Vec3(0.6, 0.64, 0.48).normalized());
  const BeamGeometry geo{Vec2(0.3e-9, 0.7e-9), kin200, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ab_phase_quadrature(geo, src));
  }
}
BENCHMARK(PhaseQuadrature);

static void DeflectionQuadrature(benchmark::State& state) {
  const DipoleSource src(electron.mu, Vec3::UnitX());
  const BeamGeometry geo{Vec2(0.0, 1e-10), kin200, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(deflection_quadrature(geo, src));
  }
}
BENCHMARK(DeflectionQuadrature);

static void DsFactorLargeN(benchmark::State& state) {
  const SpinEnsemble ens =
      spin_ensemble(state.range(0), SpinState::from_bloch(Vec3::UnitX()), electron);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ds_factor(ens, 1e-5, 1e-12, field_z));
  }
}
BENCHMARK(DsFactorLargeN)->Arg(1000)->Arg(1000000);

static void DsBruteforce(benchmark::State& state) {
  const SpinEnsemble ens = spin_ensemble(
      state.range(0), SpinState::from_bloch(Vec3(0.6, 0.0, 0.8)), electron);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ds_bruteforce(ens, 0.3, 1e-12, field_z));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(DsBruteforce)->DenseRange(4, 12, 2)->Complexity();

static void ShotSampling(benchmark::State& state) {
  const long n = state.range(0);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_shots(0.3, 0.0, 1.0, n, seed++));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(ShotSampling)->Arg(100000)->Arg(1000000);

static void FringeScanFit(benchmark::State& state) {
  std::vector<FringeScanPoint> scan;
  for (int i = 0; i < 360; ++i) {
    const double phi = 2.0 * pi * i / 360.0;
    scan.push_back({phi, detection_probability(0.2, phi, 0.8)});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_fringe(scan));
  }
}
BENCHMARK(FringeScanFit);

static void ProtocolARun(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.bias_axis = BiasAxis::x;
  cfg.d = 1e-10;
  cfg.n_electrons = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_protocol_a(cfg));
  }
}
BENCHMARK(ProtocolARun)->Arg(0)->Arg(10000);

BENCHMARK_MAIN();
