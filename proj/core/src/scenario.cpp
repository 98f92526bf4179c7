#include "spinrot/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "spinrot/error.hpp"
#include "spinrot/parallel.hpp"

namespace spinrot {

TimingModel Scenario::timing() const {
  return {laser_pulse, rotating() ? rotor.period() : 0.0, periods_per_shot, tau};
}

double Scenario::dead_time() const {
  if (!rotating()) return laser_pulse + ramsey_dead_margin;
  return std::max(0.0, timing().dead_time());
}

FieldVector Scenario::axis_unit() const {
  switch (axis) {
    case ScanAxis::x: return {1.0, 0.0, 0.0};
    case ScanAxis::y: return {0.0, 1.0, 0.0};
    case ScanAxis::z: return {0.0, 0.0, 1.0};
  }
  return {};
}

double Scenario::sensing_angle() const {
  if (rotating()) return rotor.theta_nv;
  const double projection = std::clamp(std::abs(axial_projection(0.0, axis_unit(), rotor)), 0.0, 1.0);
  return std::asin(projection);
}

void Scenario::validate() const {
  auto check = [&](bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw ConfigError("scenarios." + name + "." + field + ": " + what);
  };
  auto rethrow = [&](const std::string& group, auto&& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("scenarios." + name + "." + group + ": " + e.what());
    }
  };
  rethrow("rotor", [&] { rotor.validate(); });
  rethrow("decoherence", [&] { decoherence.validate(); });
  rethrow("photon", [&] { photon.validate(); });
  check(tau > 0.0 && std::isfinite(tau), "tau", "must be > 0");
  check(n_pulses >= 1, "n_pulses", "must be >= 1");
  check(method != Method::ramsey || n_pulses == 1, "n_pulses", "ramsey has no pi pulses");
  check(method != Method::echo || n_pulses == 1, "n_pulses", "echo has exactly one pi pulse");
  check(std::isfinite(bias_bz), "bias_bz", "must be finite");
  check(laser_pulse >= 0.0, "laser_pulse", "must be >= 0");
  check(ramsey_dead_margin >= 0.0, "ramsey_dead_margin", "must be >= 0");
  check(periods_per_shot >= 1, "periods_per_shot", "must be >= 1");
  check(t_int > 0.0, "t_int", "must be > 0");
  if (rotating()) rethrow("timing", [&] { timing().validate(); });
  check(!(method == Method::ramsey && sync_zero_crossing && rotating()), "sync_zero_crossing",
        "ramsey sequences have no pi pulse to synchronize");
}

namespace {

constexpr std::array kIds{ScenarioId::ramsey_y, ScenarioId::ramsey_z, ScenarioId::ru_y,
                          ScenarioId::ru_y_best, ScenarioId::ru_projected};

constexpr double kMotorRate = 200000.0 / 60.0;  // Hz, 200 krpm

}  // namespace

std::string_view to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::ramsey_y: return "ramsey_y";
    case ScenarioId::ramsey_z: return "ramsey_z";
    case ScenarioId::ru_y: return "ru_y";
    case ScenarioId::ru_y_best: return "ru_y_best";
    case ScenarioId::ru_projected: return "ru_projected";
  }
  return "unknown";
}

std::optional<ScenarioId> scenario_id_from(std::string_view name) {
  for (auto id : kIds) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

const std::vector<ScenarioId>& all_scenarios() {
  static const std::vector<ScenarioId> ids(kIds.begin(), kIds.end());
  return ids;
}

Scenario builtin_scenario(ScenarioId id) {
  Scenario sc;
  sc.name = std::string(to_string(id));
  sc.rotor.theta_nv = deg_to_rad(3.8);
  switch (id) {
    case ScenarioId::ramsey_y:
    case ScenarioId::ramsey_z:
      sc.method = Method::ramsey;
      sc.axis = id == ScenarioId::ramsey_y ? ScanAxis::y : ScanAxis::z;
      sc.rotor.f_rot = 0.0;
      sc.tau = 0.86e-6;
      sc.sync_zero_crossing = false;
      sc.photon.n_reps = 1000000;
      sc.photon.excess_noise_db = 0.6;
      sc.t_int = 10.0;
      break;
    case ScenarioId::ru_y:
      sc.rotor.f_rot = kMotorRate;
      sc.tau = 124e-6;
      sc.photon.excess_noise_db = 3.6;
      break;
    case ScenarioId::ru_y_best:
      sc.rotor.f_rot = kMotorRate;
      sc.rotor.theta_nv = deg_to_rad(54.7);
      sc.tau = 1.0 / kMotorRate;
      sc.periods_per_shot = 1;
      sc.decoherence.t2 = 600e-6;
      // Bias chosen so the full-period echo lands on the tenth 13C revival.
      sc.bias_bz = 20.0 / (sc.decoherence.gamma_c13 * sc.tau) -
                   kMotorRate / sc.decoherence.gamma_c13;
      sc.photon.excess_noise_db = 3.6;
      break;
    case ScenarioId::ru_projected:
      sc.method = Method::cpmg;
      sc.n_pulses = 17;
      sc.rotor.f_rot = 8300.0;
      sc.rotor.theta_nv = deg_to_rad(54.7);
      // pi pulses on every zero crossing of the upconverted field
      sc.tau = sc.n_pulses / (2.0 * sc.rotor.f_rot);
      sc.periods_per_shot = 9;
      sc.decoherence.t2 = 2e-3;
      sc.decoherence.c13_revivals = false;
      sc.photon.contrast_c = 0.1;
      sc.photon.excess_noise_db = 0.0;
      break;
  }
  return sc;
}

PulseSequence scenario_sequence(const Scenario& sc, Readout readout) {
  PulseSequence seq = [&] {
    switch (sc.method) {
      case Method::ramsey: return build_ramsey(sc.tau, readout);
      case Method::echo: return build_echo(sc.tau, readout);
      case Method::cpmg: return build_cpmg(sc.n_pulses, sc.tau, readout);
    }
    throw std::logic_error("unknown method");
  }();
  if (sc.sync_zero_crossing && sc.method != Method::ramsey) {
    if (auto d = zero_crossing_delay(seq, sc.rotor)) seq = seq.with_trigger_delay(*d);
  }
  return seq;
}

double scenario_envelope(const Scenario& sc) {
  if (sc.method == Method::ramsey) return ramsey_envelope(sc.tau, sc.decoherence);
  const double b_eff = effective_bz_for_bath(sc.bias_bz, sc.rotor.f_rot, sc.bath_sense,
                                             sc.decoherence.gamma_c13);
  const double envelope = echo_envelope(sc.tau, sc.decoherence);
  if (!sc.decoherence.c13_revivals) return envelope;
  // Revivals are set by the spacing between refocusing pulses.
  return envelope * revival_modulation(sc.tau / sc.n_pulses, b_eff, sc.decoherence);
}

double phase_response(const Scenario& sc) {
  return accumulated_phase(scenario_sequence(sc), sc.axis_unit(), sc.rotor);
}

double analytic_ds_db(const Scenario& sc) {
  const double c = sc.photon.contrast_c;
  return c * std::abs(scenario_envelope(sc)) / (2.0 - c) * std::abs(phase_response(sc));
}

namespace {

bool beyond_bound(const Scenario& sc, const PulseSequence& seq, const FieldVector& total) {
  constexpr int kSamples = 16;
  for (int k = 0; k <= kSamples; ++k) {
    const double t = seq.start() + seq.tau() * k / kSamples + seq.trigger_delay();
    if (transverse_magnitude(t, total, sc.rotor) > constants::kLinearTransverseBound) return true;
  }
  return false;
}

}  // namespace

FieldPoint simulate_field_point(const Scenario& sc, double field, std::uint64_t seed,
                                std::uint64_t stream) {
  const PulseSequence seq = scenario_sequence(sc);
  const FieldVector test = field * sc.axis_unit();
  const double phase = accumulated_phase(seq, test, sc.rotor);
  const double envelope = scenario_envelope(sc);
  const double readout = phase + sc.readout_phase;
  const double p_half = projection_probability(readout, envelope, Readout::half_pi);
  const double p_three = projection_probability(readout, envelope, Readout::three_half_pi);
  const SignalSample s = simulate_signal(p_half, p_three, sc.photon, seed, stream);
  const double norm = sc.photon.photons_per_shot() * static_cast<double>(sc.photon.n_reps);

  FieldPoint out;
  out.field = field;
  out.signal = s.signal;
  out.sigma = s.sigma;
  out.branch_half = s.counts_half / norm;
  out.branch_threehalf = s.counts_threehalf / norm;
  out.expected = expected_signal(p_half, p_three, sc.photon);
  out.beyond_linear_bound = beyond_bound(sc, seq, test + FieldVector{0.0, 0.0, sc.bias_bz});
  return out;
}

std::vector<double> auto_field_range(const Scenario& sc) {
  const double k = std::abs(phase_response(sc));
  if (!(k > 0.0)) throw NumericalError("auto_field_range: scenario has no response to its test field");
  const double half_span = 1.25 * kTwoPi / k;
  constexpr int kPoints = 101;
  std::vector<double> out(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    out[static_cast<std::size_t>(i)] = -half_span + 2.0 * half_span * i / (kPoints - 1);
  }
  return out;
}

std::vector<FieldPoint> simulate_field_scan(const Scenario& sc, const std::vector<double>& fields,
                                            std::uint64_t seed, unsigned workers) {
  std::vector<FieldPoint> out(fields.size());
  parallel_for(fields.size(), workers,
               [&](std::size_t i) { out[i] = simulate_field_point(sc, fields[i], seed, i); });
  return out;
}

SensitivityReport shot_noise_report(const Scenario& sc) {
  sc.validate();
  SensitivityReport r;
  r.scenario = sc.name;
  r.tau = sc.tau;
  r.t_dead = sc.dead_time();
  r.t_int = sc.t_int;
  r.n_reps = sc.photon.n_reps;
  r.phase_response = phase_response(sc);
  r.ds_db_analytic = analytic_ds_db(sc);
  const double angle = sc.sensing_angle();
  const double c = sc.photon.contrast_c;
  r.eta_sn_cycles = shot_noise_sensitivity(c, angle, sc.tau, r.t_dead, sc.rotor.gamma_e,
                                           GammaConvention::cycles);
  r.eta_sn_angular = shot_noise_sensitivity(c, angle, sc.tau, r.t_dead, sc.rotor.gamma_e,
                                            GammaConvention::angular);
  if (sc.rotating() && sc.method == Method::echo && sc.tau < sc.rotor.period() * (1.0 - 1e-9)) {
    r.phase_reduction = phase_reduction_factor(sc.tau, sc.rotor);
  }
  return r;
}

SensitivityReport scenario_report(const Scenario& sc, const ReportOptions& opts) {
  SensitivityReport r = shot_noise_report(sc);
  const std::vector<double> fields = opts.fields.empty() ? auto_field_range(sc) : opts.fields;
  const auto points = simulate_field_scan(sc, fields, opts.seed, opts.workers);

  std::vector<FitPoint> fit_points;
  std::vector<double> sigmas;
  fit_points.reserve(points.size());
  for (const auto& p : points) {
    fit_points.push_back({p.field, p.signal, p.sigma});
    sigmas.push_back(p.sigma);
    if (p.beyond_linear_bound) ++r.flagged_points;
  }
  r.fit = fit_sinusoid(fit_points);
  r.ds_db = r.fit.ds_db();

  std::sort(sigmas.begin(), sigmas.end());
  const std::size_t mid = sigmas.size() / 2;
  r.sigma = sigmas.size() % 2 ? sigmas[mid] : 0.5 * (sigmas[mid - 1] + sigmas[mid]);
  r.delta_b_min = min_detectable_field(r.sigma, r.ds_db);
  r.eta_opr = operating_sensitivity(r.delta_b_min, sc.t_int);
  return r;
}

SensitivityReport scenario_report(ScenarioId id, const ReportOptions& opts) {
  return scenario_report(builtin_scenario(id), opts);
}

}  // namespace spinrot
