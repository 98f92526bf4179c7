#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinrot/decoherence.hpp"
#include "spinrot/fit.hpp"
#include "spinrot/pulse_seq.hpp"
#include "spinrot/readout_mc.hpp"
#include "spinrot/sensitivity.hpp"

namespace spinrot {

enum class Method { ramsey, echo, cpmg };
enum class ScanAxis { x, y, z };

/// One magnetometry configuration: sensor motion, sequence, bath, readout.
///
/// The scanned test field is applied along `axis` on top of a bias
/// `bias_bz` along the rotation axis. The drive is resonant with the biased
/// transition, so only the test field enters the interferometric phase; the
/// bias sets the 13C revival times.
struct Scenario {
  std::string name;
  Method method = Method::echo;
  int n_pulses = 1;
  ScanAxis axis = ScanAxis::y;
  double bias_bz = 5.7e-3;  // T
  RotorNV rotor{};
  Sense bath_sense = Sense::counter;
  double tau = 124e-6;  // s
  /// Delay the trigger so the first pi pulse sits on a zero crossing of B_UC.
  bool sync_zero_crossing = true;
  DecoherenceParams decoherence{};
  PhotonModel photon{};
  double laser_pulse = 3e-6;          // s
  int periods_per_shot = 2;           // rotating scenarios
  double ramsey_dead_margin = 1.14e-6;  // s, stationary scenarios, on top of the laser pulse
  double t_int = 300.0;               // s
  /// Phase of the projection pulse axis relative to the first pulse. pi/2
  /// puts zero test field on the fringe centre; 0 gives full recoherence
  /// contrast (revival traces).
  double readout_phase = kPi / 2.0;  // rad

  bool rotating() const { return rotor.f_rot > 0.0; }
  TimingModel timing() const;
  /// Per-shot time not spent accumulating phase.
  double dead_time() const;
  /// Unit test-field direction.
  FieldVector axis_unit() const;
  /// Angle whose sine is the projection of the test field onto the sensing
  /// axis; theta_nv for rotating scenarios.
  double sensing_angle() const;
  /// Throws ConfigError naming the offending field.
  void validate() const;
};

enum class ScenarioId { ramsey_y, ramsey_z, ru_y, ru_y_best, ru_projected };

std::string_view to_string(ScenarioId id);
std::optional<ScenarioId> scenario_id_from(std::string_view name);
const std::vector<ScenarioId>& all_scenarios();

/// Default parameters for each named configuration.
Scenario builtin_scenario(ScenarioId id);

/// Pulse sequence of the scenario, trigger-synchronized when requested.
PulseSequence scenario_sequence(const Scenario& sc, Readout readout = Readout::half_pi);

/// Coherence envelope multiplying the fringe.
double scenario_envelope(const Scenario& sc);

/// d(phase)/d(test field), rad per tesla.
double phase_response(const Scenario& sc);

/// Noise-free steepest-point response C |E| / (2 - C) * |d phase / dB|.
double analytic_ds_db(const Scenario& sc);

struct FieldPoint {
  double field = 0.0;
  double signal = 0.0;
  double sigma = 0.0;
  double branch_half = 0.0;       // counts per shot / photons_per_shot, pi/2 readout
  double branch_threehalf = 0.0;  // same for 3pi/2
  double expected = 0.0;          // noise-free signal
  bool beyond_linear_bound = false;
};

FieldPoint simulate_field_point(const Scenario& sc, double field, std::uint64_t seed,
                                std::uint64_t stream);

/// Symmetric scan covering 2.5 fringes of the ideal response, 101 points.
std::vector<double> auto_field_range(const Scenario& sc);

std::vector<FieldPoint> simulate_field_scan(const Scenario& sc, const std::vector<double>& fields,
                                            std::uint64_t seed, unsigned workers = 0);

struct SensitivityReport {
  std::string scenario;
  double ds_db = 0.0;           // fitted, per tesla
  double ds_db_analytic = 0.0;  // noise-free, per tesla
  double phase_response = 0.0;  // rad per tesla
  double sigma = 0.0;           // median per-point standard error of S
  double delta_b_min = 0.0;     // T
  double eta_opr = 0.0;         // T / sqrt(Hz)
  double eta_sn_cycles = 0.0;   // T / sqrt(Hz)
  double eta_sn_angular = 0.0;  // T / sqrt(Hz)
  /// Full-period / partial-window phase ratio for synchronized single echoes
  /// shorter than a rotation; 1 otherwise.
  double phase_reduction = 1.0;
  double t_int = 0.0;
  double tau = 0.0;
  double t_dead = 0.0;
  long long n_reps = 0;
  std::size_t flagged_points = 0;
  SinusoidFit fit{};

  double eta_sn(GammaConvention c) const {
    return c == GammaConvention::angular ? eta_sn_angular : eta_sn_cycles;
  }
  /// eta_sn with the phase-reduction penalty applied.
  double eta_sn_reduced(GammaConvention c) const { return eta_sn(c) * phase_reduction; }
};

struct ReportOptions {
  std::uint64_t seed = 1;
  unsigned workers = 0;
  /// Field values to scan; auto_field_range when empty.
  std::vector<double> fields{};
};

/// Sensitivity budget from a full simulated field scan:
/// sequence, phase, envelopes, Monte Carlo readout, sinusoid fit.
SensitivityReport scenario_report(const Scenario& sc, const ReportOptions& opts = {});
SensitivityReport scenario_report(ScenarioId id, const ReportOptions& opts = {});

/// Analytic-only part of the report, no simulation.
SensitivityReport shot_noise_report(const Scenario& sc);

}  // namespace spinrot
