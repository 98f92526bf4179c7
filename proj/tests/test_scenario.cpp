#include <doctest.h>

#include <cmath>

#include "spinrot/error.hpp"
#include "spinrot/scenario.hpp"

using namespace spinrot;
using namespace spinrot::literals;
using doctest::Approx;

TEST_CASE("built-in scenarios validate") {
  for (auto id : all_scenarios()) {
    const Scenario sc = builtin_scenario(id);
    CHECK(sc.name == to_string(id));
    CHECK_NOTHROW(sc.validate());
    CHECK(scenario_id_from(sc.name) == id);
  }
  CHECK_FALSE(scenario_id_from("nope").has_value());
}

TEST_CASE("timing budget") {
  const Scenario ru = builtin_scenario(ScenarioId::ru_y);
  CHECK(ru.dead_time() == Approx(2.0 / 3333.333 - 124e-6).epsilon(1e-4));
  CHECK(ru.dead_time() == Approx(476e-6).epsilon(2e-3));
  // 2.5e5 repetitions of both readouts fill the 300 s integration time.
  CHECK(2.0 * ru.photon.n_reps * (ru.tau + ru.dead_time()) == Approx(ru.t_int).epsilon(1e-3));

  const Scenario ry = builtin_scenario(ScenarioId::ramsey_y);
  CHECK(ry.dead_time() == Approx(4.14e-6).epsilon(1e-3));
  CHECK(2.0 * ry.photon.n_reps * (ry.tau + ry.dead_time()) == Approx(ry.t_int).epsilon(1e-3));
}

TEST_CASE("sequences are synchronized to the zero crossing") {
  const Scenario ru = builtin_scenario(ScenarioId::ru_y);
  const auto seq = scenario_sequence(ru);
  const double t_pi = seq.pi_times()[0] + seq.trigger_delay();
  CHECK(std::abs(upconverted_field(t_pi, {0, 1_uT, 0}, ru.rotor)) < 1e-15);
  const auto [phi1, phi2] = half_window_phases(seq, {0, 1_uT, 0}, ru.rotor);
  CHECK(phi1 == Approx(-phi2).epsilon(1e-12));

  const Scenario proj = builtin_scenario(ScenarioId::ru_projected);
  const auto cp = scenario_sequence(proj);
  CHECK(cp.pi_times().size() == 17);
  for (double t : cp.pi_times()) {
    CHECK(std::abs(upconverted_field(t + cp.trigger_delay(), {0, 1_uT, 0}, proj.rotor)) < 1e-15);
  }
}

TEST_CASE("phase response and analytic slopes") {
  const Scenario ru = builtin_scenario(ScenarioId::ru_y);
  const double k = phase_response(ru);
  // Synchronized echo of length tau, amplitude sin(theta) * B: 2 pi gamma * (2/Omega) * (1 - cos(Omega tau / 2)) * sin(theta).
  const double omega = ru.rotor.angular_rate();
  const double oracle = kTwoPi * 28e9 * std::sin(3.8_deg) * 2.0 / omega * (1.0 - std::cos(omega * ru.tau / 2.0));
  CHECK(std::abs(k) == Approx(oracle).epsilon(1e-9));

  const double ry = analytic_ds_db(builtin_scenario(ScenarioId::ramsey_y));
  const double rz = analytic_ds_db(builtin_scenario(ScenarioId::ramsey_z));
  const double ruy = analytic_ds_db(ru);
  CHECK(ruy > rz);
  CHECK(rz > ry);
  CHECK(rz / ry == Approx(std::cos(3.8_deg) / std::cos(86.2_deg)).epsilon(1e-9));
  CHECK(ruy * 1e-6 == Approx(6.4e-3).epsilon(0.02));

  const Scenario best = builtin_scenario(ScenarioId::ru_y_best);
  CHECK(analytic_ds_db(best) > 10 * ruy);
}

TEST_CASE("envelope at the operating points") {
  const Scenario ru = builtin_scenario(ScenarioId::ru_y);
  CHECK(scenario_envelope(ru) == Approx(std::exp(-std::pow(124.0 / 250.0, 2))).epsilon(1e-2));
  const Scenario best = builtin_scenario(ScenarioId::ru_y_best);
  const double b_eff = effective_bz_for_bath(best.bias_bz, best.rotor.f_rot, best.bath_sense);
  CHECK(revival_modulation(best.tau, b_eff, best.decoherence) == Approx(1.0).epsilon(1e-9));
  const Scenario ry = builtin_scenario(ScenarioId::ramsey_y);
  CHECK(scenario_envelope(ry) == Approx(ramsey_envelope(0.86e-6, ry.decoherence)));
}

TEST_CASE("field points: zero field sits on the fringe centre") {
  Scenario ru = builtin_scenario(ScenarioId::ru_y);
  ru.photon.n_reps = 250000;
  const FieldPoint p = simulate_field_point(ru, 0.0, 5, 0);
  CHECK(std::abs(p.expected) < 1e-12);
  CHECK(std::abs(p.signal) < 5 * p.sigma);
  CHECK_FALSE(p.beyond_linear_bound);
}

TEST_CASE("field scan reproducibility and branch mirroring") {
  const Scenario ru = builtin_scenario(ScenarioId::ru_y);
  const auto fields = auto_field_range(ru);
  CHECK(fields.size() == 101);
  CHECK(fields.front() == Approx(-fields.back()));
  const auto a = simulate_field_scan(ru, fields, 3, 1);
  const auto b = simulate_field_scan(ru, fields, 3, 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].signal == b[i].signal);
    CHECK(a[i].branch_half == b[i].branch_half);
  }
  // pi/2 and 3pi/2 branches are mirror images about their common mean.
  for (std::size_t i = 0; i < a.size(); i += 10) {
    const auto& p = a[i];
    const auto& q = a[a.size() - 1 - i];
    CHECK(p.expected == Approx(-q.expected).scale(1e-3).epsilon(1e-9));
  }
}

TEST_CASE("sensitivity report at full scale") {
  ReportOptions opts;
  opts.seed = 17;
  const auto r = scenario_report(ScenarioId::ru_y, opts);
  CHECK(r.ds_db * 1e-6 == Approx(6.4e-3).epsilon(0.15));
  CHECK(r.ds_db == Approx(r.ds_db_analytic).epsilon(0.15));
  CHECK(r.eta_opr * 1e6 == Approx(5.8).epsilon(0.5));
  CHECK(r.phase_reduction == Approx(2.735).epsilon(0.01));
  CHECK(r.eta_sn_angular * 1e6 == Approx(1.33).epsilon(0.01));
  CHECK(r.eta_sn_cycles == Approx(kTwoPi * r.eta_sn_angular));
  CHECK(r.flagged_points == 0);
}

TEST_CASE("scenario validation names the field") {
  Scenario sc = builtin_scenario(ScenarioId::ru_y);
  sc.tau = 1e-3;
  try {
    sc.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("scenarios.ru_y.") != std::string::npos);
  }
  sc = builtin_scenario(ScenarioId::ru_y);
  sc.photon.n_reps = 0;
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc = builtin_scenario(ScenarioId::ramsey_y);
  sc.method = Method::cpmg;
  sc.n_pulses = 0;
  CHECK_THROWS_AS(sc.validate(), ConfigError);
}
