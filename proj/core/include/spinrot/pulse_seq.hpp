#pragma once

#include <optional>
#include <span>
#include <vector>

#include "spinrot/spin_core.hpp"

namespace spinrot {

enum class PulseKind { control, readout_projection };
enum class Readout { half_pi, three_half_pi };

/// Instantaneous microwave pulse at a trigger-relative time.
struct Pulse {
  double t = 0.0;      // s
  double angle = 0.0;  // rad
  PulseKind kind = PulseKind::control;

  bool is_pi() const;
};

/// Time-ordered pulses bracketed by pi/2-family pulses.
///
/// Sequence time 0 is the first pulse; the lab time of a pulse is its
/// sequence time plus `trigger_delay`.
class PulseSequence {
public:
  /// Validates ordering and bracketing; throws std::invalid_argument.
  PulseSequence(std::vector<Pulse> pulses, double trigger_delay = 0.0);

  std::span<const Pulse> pulses() const { return pulses_; }
  double tau() const { return pulses_.back().t - pulses_.front().t; }
  double start() const { return pulses_.front().t; }
  double end() const { return pulses_.back().t; }
  double trigger_delay() const { return trigger_delay_; }
  Readout readout() const;

  /// Times of the refocusing pi pulses.
  std::vector<double> pi_times() const;

  PulseSequence with_trigger_delay(double delay) const;
  PulseSequence with_readout(Readout readout) const;

private:
  std::vector<Pulse> pulses_;
  double trigger_delay_ = 0.0;
};

PulseSequence build_ramsey(double tau, Readout readout = Readout::half_pi);
PulseSequence build_echo(double tau, Readout readout = Readout::half_pi);
/// n pi pulses at tau*(2k-1)/(2n), k = 1..n.
PulseSequence build_cpmg(int n, double tau, Readout readout = Readout::half_pi);

/// Toggling-frame sign: +1 before the first pi pulse, flipped by each pi
/// pulse, 0 outside the open window (first pulse, last pulse).
int sign_function(const PulseSequence& seq, double t);

/// Interferometric phase 2*pi * integral of s(t) * [offset_hz - gamma_e b.n(t)]
/// over the sequence, with b.n evaluated at lab time t + trigger_delay. The
/// integrand is the detuning of the linearized 0 -> -1 line from the drive.
///
/// `b` is the field beyond the bias that the drive is resonant with, so the
/// result is linear in b. `offset_hz` is a constant shift of the transition
/// (a temperature surrogate). Evaluated in closed form.
double accumulated_phase(const PulseSequence& seq, const FieldVector& b, const RotorNV& r,
                         double offset_hz = 0.0);

/// Same quantity by adaptive Gauss-Kronrod quadrature over each
/// constant-sign segment. Cross-check for accumulated_phase.
double accumulated_phase_quadrature(const PulseSequence& seq, const FieldVector& b,
                                    const RotorNV& r, double offset_hz = 0.0);

/// Phases accumulated before and after the first pi pulse (phi1, phi2).
std::pair<double, double> half_window_phases(const PulseSequence& seq, const FieldVector& b,
                                             const RotorNV& r);

/// Smallest non-negative trigger delay placing the first pi pulse on a zero
/// crossing of the upconverted field. Empty when the rotor is stationary.
/// Throws std::invalid_argument when the sequence has no pi pulse.
std::optional<double> zero_crossing_delay(const PulseSequence& seq, const RotorNV& r);

/// Full-period optimal echo phase divided by the phase of a zero-crossing
/// synchronized echo of length tau. Requires 0 < tau <= 1/f_rot.
double phase_reduction_factor(double tau, const RotorNV& r);

/// phase_reduction_factor computed from two quadrature phase evaluations.
double phase_reduction_factor_quadrature(double tau, const RotorNV& r);

}  // namespace spinrot
