#include "spinrot/readout_mc.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "spinrot/error.hpp"
#include "spinrot/rng.hpp"

namespace spinrot {

double PhotonModel::excess_noise_factor() const {
  const double divisor = db_convention == NoiseDbConvention::amplitude ? 20.0 : 10.0;
  return std::pow(10.0, excess_noise_db / divisor);
}

void PhotonModel::validate() const {
  if (!(rate > 0.0)) throw std::invalid_argument("photon: rate must be > 0");
  if (!(read_window > 0.0)) throw std::invalid_argument("photon: read_window must be > 0");
  if (!(contrast_c > 0.0 && contrast_c < 1.0)) {
    throw std::invalid_argument("photon: contrast_c must lie in (0, 1)");
  }
  if (!(excess_noise_db >= 0.0)) throw std::invalid_argument("photon: excess_noise_db must be >= 0");
  if (n_reps < 1) throw std::invalid_argument("photon: n_reps must be >= 1");
}

double TimingModel::dead_time() const { return periods_per_shot * rotation_period - tau; }

void TimingModel::validate() const {
  if (!(laser_pulse >= 0.0)) throw std::invalid_argument("timing: laser_pulse must be >= 0");
  if (periods_per_shot < 1) throw std::invalid_argument("timing: periods_per_shot must be >= 1");
  if (!(dead_time() >= -1e-12 * tau)) {
    throw std::invalid_argument("timing: tau exceeds periods_per_shot rotation periods");
  }
}

double projection_probability(double phase, double envelope, Readout readout) {
  if (!(envelope >= -1.0 && envelope <= 1.0)) {
    throw std::invalid_argument("projection_probability: envelope must lie in [-1, 1]");
  }
  const double sign = readout == Readout::half_pi ? 1.0 : -1.0;
  return 0.5 * (1.0 + sign * envelope * std::cos(phase));
}

namespace {

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
}

double branch_mean(double p, const PhotonModel& pm) {
  return pm.photons_per_shot() * static_cast<double>(pm.n_reps) * (1.0 - pm.contrast_c * p);
}

double normalized(double a, double b) { return (a - b) / (a + b); }

double propagated_sigma(double a, double b) {
  const double total = a + b;
  return std::sqrt(4.0 * a * b / (total * total * total));
}

}  // namespace

SignalSample simulate_signal(double p_half, double p_threehalf, const PhotonModel& pm,
                             std::uint64_t seed, std::uint64_t stream) {
  require_probability(p_half);
  require_probability(p_threehalf);
  pm.validate();
  const double mean_a = branch_mean(p_half, pm);
  const double mean_b = branch_mean(p_threehalf, pm);
  if (!(mean_a > 0.0 && mean_b > 0.0)) {
    throw NumericalError("simulate_signal: zero expected photon counts");
  }

  auto rng = make_stream(seed, stream);
  const double factor = pm.excess_noise_factor();
  auto draw = [&](double mean) {
    double counts = static_cast<double>(std::poisson_distribution<long long>(mean)(rng));
    if (factor > 1.0) {
      counts += std::normal_distribution<double>(0.0, std::sqrt((factor * factor - 1.0) * mean))(rng);
    }
    return counts;
  };
  const double a = draw(mean_a);
  const double b = draw(mean_b);
  if (!(a > 0.0 && b > 0.0)) throw NumericalError("simulate_signal: no photons detected in a branch");
  return {normalized(a, b), factor * propagated_sigma(a, b), a, b};
}

double expected_signal(double p_half, double p_threehalf, const PhotonModel& pm) {
  return normalized(branch_mean(p_half, pm), branch_mean(p_threehalf, pm));
}

double shot_noise_floor(const PhotonModel& pm, double p_half, double p_threehalf) {
  require_probability(p_half);
  require_probability(p_threehalf);
  const double a = branch_mean(p_half, pm);
  const double b = branch_mean(p_threehalf, pm);
  if (!(a > 0.0 && b > 0.0)) throw NumericalError("shot_noise_floor: zero expected photon counts");
  return propagated_sigma(a, b);
}

}  // namespace spinrot
