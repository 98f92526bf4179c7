#include "spinrot/sensitivity.hpp"

#include <cmath>
#include <stdexcept>

#include "spinrot/error.hpp"
#include "spinrot/units.hpp"

namespace spinrot {

double min_detectable_field(double sigma, double ds_db) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("min_detectable_field: sigma must be >= 0");
  if (!(ds_db > 0.0) || !std::isfinite(ds_db)) {
    throw NumericalError("min_detectable_field: zero response, field is undetectable");
  }
  return sigma / ds_db;
}

double operating_sensitivity(double delta_b_min, double t_int) {
  if (!(t_int > 0.0)) throw std::invalid_argument("operating_sensitivity: t_int must be > 0");
  return delta_b_min * std::sqrt(t_int);
}

double shot_noise_sensitivity(double c, double theta_nv, double tau, double t_d, double gamma_e,
                              GammaConvention convention) {
  if (!(tau > 0.0)) throw std::invalid_argument("shot_noise_sensitivity: tau must be > 0");
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("shot_noise_sensitivity: need 0 < C < 1");
  if (!(t_d >= 0.0)) throw std::invalid_argument("shot_noise_sensitivity: t_d must be >= 0");
  if (!(gamma_e > 0.0)) throw std::invalid_argument("shot_noise_sensitivity: gamma_e must be > 0");
  const double s = std::sin(theta_nv);
  if (!(std::abs(s) > 1e-15)) {
    throw NumericalError("shot_noise_sensitivity: sin(theta_nv) = 0, no transverse response");
  }
  const double gamma = convention == GammaConvention::angular ? kTwoPi * gamma_e : gamma_e;
  return kPi / (gamma * 2.0 * c * std::abs(s)) * std::sqrt(tau + t_d) / tau;
}

}  // namespace spinrot
