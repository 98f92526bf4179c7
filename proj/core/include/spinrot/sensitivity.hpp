#pragma once

namespace spinrot {

/// delta_B_min = sigma / (dS/dB). Throws NumericalError for a zero or
/// negative response.
double min_detectable_field(double sigma, double ds_db);

/// eta = delta_B_min * sqrt(T_int), tesla per root hertz.
double operating_sensitivity(double delta_b_min, double t_int);

/// Whether gamma_e in the shot-noise estimate is used as given (cycles per
/// tesla) or multiplied by 2 pi (radians per second per tesla).
enum class GammaConvention { cycles, angular };

/// Shot-noise limited sensitivity pi / (gamma 2 C sin theta) * sqrt(tau + t_D) / tau.
/// Throws NumericalError when sin(theta) vanishes (no response).
double shot_noise_sensitivity(double c, double theta_nv, double tau, double t_d, double gamma_e,
                              GammaConvention convention);

}  // namespace spinrot
