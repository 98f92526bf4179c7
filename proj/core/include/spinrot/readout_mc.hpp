#pragma once

#include <cstdint>

#include "spinrot/pulse_seq.hpp"

namespace spinrot {

/// How an "X dB above shot noise" figure maps onto the standard error.
enum class NoiseDbConvention {
  amplitude,  ///< sigma * 10^(dB/20)
  power,      ///< sigma * 10^(dB/10)
};

struct PhotonModel {
  double rate = 3e6;               // detected photons per second
  double read_window = 0.3e-6;     // s
  double contrast_c = 0.02;        // readout efficiency C
  double excess_noise_db = 0.0;    // dB above photon shot noise
  long long n_reps = 250000;       // shots per readout branch
  NoiseDbConvention db_convention = NoiseDbConvention::amplitude;

  /// Mean photons per shot for a fully bright projection.
  double photons_per_shot() const { return rate * read_window; }
  /// Multiplicative inflation of the shot-noise standard error.
  double excess_noise_factor() const;
  void validate() const;
};

struct TimingModel {
  double laser_pulse = 3e-6;       // s
  double rotation_period = 0.0;    // s
  int periods_per_shot = 2;
  double tau = 0.0;                // s

  /// periods_per_shot * rotation_period - tau.
  double dead_time() const;
  void validate() const;
};

/// Probability entering the fluorescence model: (1 +/- envelope cos(phase))/2,
/// + for the pi/2 projection, - for 3pi/2.
double projection_probability(double phase, double envelope, Readout readout);

struct SignalSample {
  double signal = 0.0;  ///< (S_half - S_threehalf) / (S_half + S_threehalf)
  double sigma = 0.0;   ///< standard error of signal, including excess noise
  double counts_half = 0.0;
  double counts_threehalf = 0.0;
};

/// Photon-counting readout of both branches, n_reps shots each.
///
/// Per shot the mean count is rate*read_window*(1 - C*P). Counts summed over
/// n_reps Poisson shots are drawn directly as one Poisson variate of the
/// summed mean. Excess noise adds zero-mean Gaussian scatter so that the
/// count variance is F^2 times the mean, F = excess_noise_factor().
/// The generator for (seed, stream) is independent of every other stream.
SignalSample simulate_signal(double p_half, double p_threehalf, const PhotonModel& pm,
                             std::uint64_t seed, std::uint64_t stream = 0);

/// Signal expected from the branch probabilities, no noise.
double expected_signal(double p_half, double p_threehalf, const PhotonModel& pm);

/// Analytic Poisson standard error of the normalized signal, no excess noise:
/// sqrt(4 a b / (a + b)^3) with a, b the expected summed branch counts.
double shot_noise_floor(const PhotonModel& pm, double p_half = 0.5, double p_threehalf = 0.5);

}  // namespace spinrot
