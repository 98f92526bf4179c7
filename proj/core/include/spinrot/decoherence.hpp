#pragma once

#include <vector>

#include "spinrot/spin_core.hpp"
#include "spinrot/units.hpp"

namespace spinrot {

/// Phenomenological coherence parameters of the NV ensemble.
struct DecoherenceParams {
  double t2_star = 0.71e-6;                       // s, Gaussian Ramsey decay
  double t2 = 250e-6;                             // s, echo envelope
  double stretch_n = 2.0;                         // echo envelope exponent
  double gamma_c13 = constants::kGammaC13;        // Hz/T
  double hyperfine_a = constants::kHyperfineN14;  // Hz
  double revival_width = 4e-6;                    // s, Gaussian sigma of each revival
  double ramsey_detuning = 0.0;                   // Hz
  /// Natural-abundance 13C bath. When false the echo contrast is the bare
  /// envelope (isotopically purified sample).
  bool c13_revivals = true;

  void validate() const;
};

/// exp(-(tau/T2*)^2) * (1 + 2 cos(2 pi a tau))/3 * cos(2 pi detuning tau).
double ramsey_envelope(double tau, const DecoherenceParams& p);

/// exp(-(tau/T2)^n).
double echo_envelope(double tau, const DecoherenceParams& p);

/// Revival times 2j / (gamma_c13 * b_z_eff), j = 1..j_max.
std::vector<double> revival_times(double b_z_eff, const DecoherenceParams& p, int j_max);

/// Gaussian comb over revivals j = 0, 1, ..., clipped to [0, 1].
double revival_modulation(double tau, double b_z_eff, const DecoherenceParams& p);

/// Bias field plus the rotation pseudo-field seen by the 13C bath.
double effective_bz_for_bath(double b_z, double f_rot, Sense sense,
                             double gamma_nuc = constants::kGammaC13);

/// Full echo contrast: revival comb (when enabled) times the envelope.
double echo_contrast(double tau, double b_z_eff, const DecoherenceParams& p);

}  // namespace spinrot
