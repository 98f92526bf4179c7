#include <doctest.h>

#include <cmath>
#include <vector>

#include "spinrot/pulse_seq.hpp"

using namespace spinrot;
using namespace spinrot::literals;
using doctest::Approx;

namespace {

RotorNV rotating(double f = 3333.0, double theta = 3.8_deg, double phi0 = 0.0) {
  RotorNV r;
  r.f_rot = f;
  r.theta_nv = theta;
  r.phi0 = phi0;
  return r;
}

// Midpoint rule on each constant-sign segment; independent of both library paths.
double brute_phase(const PulseSequence& seq, const FieldVector& b, const RotorNV& r, double offset,
                   int steps) {
  std::vector<double> edges{seq.start()};
  for (double t : seq.pi_times()) edges.push_back(t);
  edges.push_back(seq.end());
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double h = (edges[k + 1] - edges[k]) / steps;
    for (int i = 0; i < steps; ++i) {
      const double t = edges[k] + (i + 0.5) * h;
      const auto n = nv_axis(t + seq.trigger_delay(), r);
      const double bn = n[0] * b.bx + n[1] * b.by + n[2] * b.bz;
      sum += sign_function(seq, t) * (offset - r.gamma_e * bn) * h;
    }
  }
  return kTwoPi * sum;
}

}  // namespace

TEST_CASE("sequence builders") {
  const auto ramsey = build_ramsey(0.86_us);
  CHECK(ramsey.pulses().size() == 2);
  CHECK(ramsey.pi_times().empty());
  CHECK(ramsey.tau() == Approx(0.86e-6));

  const auto echo = build_echo(124_us, Readout::three_half_pi);
  REQUIRE(echo.pi_times().size() == 1);
  CHECK(echo.pi_times()[0] == Approx(62e-6));
  CHECK(echo.readout() == Readout::three_half_pi);
  CHECK(echo.with_readout(Readout::half_pi).readout() == Readout::half_pi);

  const auto cpmg = build_cpmg(4, 100_us);
  const auto pis = cpmg.pi_times();
  REQUIRE(pis.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(pis[k] == Approx(100e-6 * (2 * k + 1) / 8.0));

  CHECK_THROWS(build_echo(0.0));
  CHECK_THROWS(build_cpmg(0, 1e-6));
  CHECK_THROWS(PulseSequence({{0.0, kPi / 2}, {0.0, kPi / 2}}));
  CHECK_THROWS(PulseSequence({{0.0, kPi}, {1e-6, kPi / 2}}));
  CHECK_THROWS(build_echo(1e-6).with_trigger_delay(NAN));
}

TEST_CASE("sign function toggles at pi pulses") {
  const auto cpmg = build_cpmg(2, 100_us);
  CHECK(sign_function(cpmg, -1e-6) == 0);
  CHECK(sign_function(cpmg, 10e-6) == 1);
  CHECK(sign_function(cpmg, 30e-6) == -1);
  CHECK(sign_function(cpmg, 80e-6) == 1);
  CHECK(sign_function(cpmg, 101e-6) == 0);
}

TEST_CASE("closed form matches quadrature and brute force") {
  const FieldVector b{0.3_uT, 1_uT, 2_uT};
  for (const auto& seq : {build_ramsey(0.86_us), build_echo(124_us).with_trigger_delay(13_us),
                          build_cpmg(3, 250_us).with_trigger_delay(41_us)}) {
    for (const RotorNV& r : {rotating(0.0), rotating(3333.0), rotating(8300.0, 54.7_deg, 0.4)}) {
      const double closed = accumulated_phase(seq, b, r, 1e3);
      const double quad = accumulated_phase_quadrature(seq, b, r, 1e3);
      CHECK(closed == Approx(quad).epsilon(1e-9).scale(1e-9));
      CHECK(closed == Approx(brute_phase(seq, b, r, 1e3, 200000)).epsilon(1e-6).scale(1e-6));
    }
  }
}

TEST_CASE("Ramsey phase") {
  RotorNV stationary;
  stationary.theta_nv = 3.8_deg;
  const double tau = 0.86_us;
  const auto seq = build_ramsey(tau);
  CHECK(accumulated_phase(seq, {0, 0, 1_uT}, stationary) ==
        Approx(-kTwoPi * 28e9 * 1e-6 * std::cos(3.8_deg) * tau).epsilon(1e-12));
  CHECK(accumulated_phase(seq, {}, stationary, 2e5) == Approx(kTwoPi * 2e5 * tau));
}

TEST_CASE("echo refocuses static and constant perturbations") {
  RotorNV stationary;
  stationary.theta_nv = 3.8_deg;
  const auto echo = build_echo(124_us).with_trigger_delay(5.5_us);
  CHECK(std::abs(accumulated_phase(echo, {0.1_mT, 0.2_mT, 5.7_mT}, stationary)) <= 1e-12);
  CHECK(std::abs(accumulated_phase(echo, {}, stationary, 1e6)) <= 1e-12);

  const auto r = rotating();
  for (double d : {0.0, 17_us, 123_us}) {
    const auto seq = build_echo(124_us).with_trigger_delay(d);
    CHECK(std::abs(accumulated_phase(seq, {0, 0, 5.7_mT}, r)) <= 1e-12);
    CHECK(std::abs(accumulated_phase(seq, {}, r, 3e4)) <= 1e-12);
  }
  const auto synced = build_echo(124_us).with_trigger_delay(*zero_crossing_delay(build_echo(124_us), r));
  CHECK(std::abs(accumulated_phase(synced, {0, 1_uT, 0}, r)) > 0.1);
  CHECK(std::abs(accumulated_phase(synced, {1_uT, 0, 0}, r)) < 1e-9);
}

TEST_CASE("phase is linear in transverse field") {
  const auto r = rotating();
  const auto seq = build_echo(124_us).with_trigger_delay(*zero_crossing_delay(build_echo(124_us), r));
  const double p1 = accumulated_phase(seq, {0, 1_uT, 0}, r);
  CHECK(accumulated_phase(seq, {0, 3_uT, 0}, r) == Approx(3 * p1).epsilon(1e-13));
  const double px = accumulated_phase(seq.with_trigger_delay(seq.trigger_delay() + 0.25 * r.period()),
                                      {1_uT, 0, 0}, r);
  CHECK(std::abs(px) == Approx(std::abs(p1)).epsilon(1e-9));
}

TEST_CASE("zero crossing delay maximizes the echo phase") {
  const auto r = rotating(3333.0, 3.8_deg, 0.9);
  const auto echo = build_echo(124_us);
  const double d = *zero_crossing_delay(echo, r);
  CHECK(d >= 0.0);
  CHECK(d < 0.5 * r.period());
  CHECK(std::abs(upconverted_field(echo.pi_times()[0] + d, {0, 1_uT, 0}, r)) < 1e-15);

  // Scan the trigger delay over a full period: the extremum sits at d (mod half a period).
  const FieldVector b{0, 1_uT, 0};
  double best = 0.0, best_d = 0.0;
  for (int i = 0; i < 30000; ++i) {
    const double di = r.period() * i / 30000.0;
    const double p = std::abs(accumulated_phase(echo.with_trigger_delay(di), b, r));
    if (p > best) {
      best = p;
      best_d = di;
    }
  }
  const double half = 0.5 * r.period();
  const double gap = std::abs(std::remainder(best_d - d, half));
  CHECK(gap < 2.0 * r.period() / 30000.0);

  const auto [phi1, phi2] = half_window_phases(echo.with_trigger_delay(d), b, r);
  CHECK(phi1 == Approx(-phi2).epsilon(1e-12));
  CHECK(phi1 - phi2 == Approx(accumulated_phase(echo.with_trigger_delay(d), b, r)).epsilon(1e-12));

  CHECK_FALSE(zero_crossing_delay(echo, RotorNV{}).has_value());
  CHECK_THROWS(zero_crossing_delay(build_ramsey(1e-6), r));
}

TEST_CASE("phase reduction factor") {
  const auto r = rotating(3333.0);
  const double closed = phase_reduction_factor(124_us, r);
  CHECK(closed == Approx(2.735).epsilon(2e-3));
  CHECK(closed == Approx(phase_reduction_factor_quadrature(124_us, r)).epsilon(1e-6));
  CHECK(phase_reduction_factor(r.period(), r) == Approx(1.0).epsilon(1e-12));
  CHECK(phase_reduction_factor(124_us, rotating(3330.0)) == Approx(2.739).epsilon(2e-3));
  CHECK_THROWS(phase_reduction_factor(1.0, r));
  CHECK_THROWS(phase_reduction_factor(1e-4, RotorNV{}));
}
