#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "spinrot/fit.hpp"
#include "spinrot/pulse_seq.hpp"
#include "spinrot/readout_mc.hpp"
#include "spinrot/scenario.hpp"

using namespace spinrot;

namespace {

RotorNV rotor() {
  RotorNV r;
  r.f_rot = 3333.0;
  r.theta_nv = deg_to_rad(3.8);
  return r;
}

PulseSequence echo() {
  const auto seq = build_echo(124e-6);
  return seq.with_trigger_delay(*zero_crossing_delay(seq, rotor()));
}

void BM_PhaseClosedForm(benchmark::State& state) {
  const auto seq = echo();
  const auto r = rotor();
  double by = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(accumulated_phase(seq, {0.0, by, 5.7e-3}, r));
    by += 1e-12;
  }
}
BENCHMARK(BM_PhaseClosedForm);

void BM_PhaseQuadrature(benchmark::State& state) {
  const auto seq = echo();
  const auto r = rotor();
  double by = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(accumulated_phase_quadrature(seq, {0.0, by, 5.7e-3}, r));
    by += 1e-12;
  }
}
BENCHMARK(BM_PhaseQuadrature);

void BM_ExactEigensolve(benchmark::State& state) {
  SpinHamiltonian h;
  h.field_nv_frame = {0.3e-3, 0.1e-3, 5.7e-3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(transition_frequency_exact(h));
    h.field_nv_frame.bx += 1e-12;
  }
}
BENCHMARK(BM_ExactEigensolve);

void BM_SimulateSignal(benchmark::State& state) {
  PhotonModel pm;
  pm.n_reps = state.range(0);
  std::uint64_t stream = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_signal(0.6, 0.4, pm, 1, stream++));
}
BENCHMARK(BM_SimulateSignal)->Arg(10000)->Arg(250000);

void BM_FitSinusoid(benchmark::State& state) {
  std::vector<FitPoint> pts;
  for (int i = 0; i < 101; ++i) {
    const double x = -10e-6 + 20e-6 * i / 100.0;
    pts.push_back({x, 0.004 * std::sin(kTwoPi * x / 8e-6 + 0.3) + 1e-4 * std::cos(37.0 * i), 1e-4});
  }
  for (auto _ : state) benchmark::DoNotOptimize(fit_sinusoid(pts));
}
BENCHMARK(BM_FitSinusoid);

void BM_FieldScan(benchmark::State& state) {
  const Scenario sc = builtin_scenario(ScenarioId::ru_y);
  const auto fields = auto_field_range(sc);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_field_scan(sc, fields, seed++, 1));
}
BENCHMARK(BM_FieldScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
