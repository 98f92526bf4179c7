#include "spinrot/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinrot {

void DecoherenceParams::validate() const {
  if (!(t2_star > 0.0)) throw std::invalid_argument("decoherence: t2_star must be > 0");
  if (!(t2 > t2_star)) throw std::invalid_argument("decoherence: t2 must exceed t2_star");
  if (!(stretch_n >= 1.0)) throw std::invalid_argument("decoherence: stretch_n must be >= 1");
  if (!(gamma_c13 > 0.0)) throw std::invalid_argument("decoherence: gamma_c13 must be > 0");
  if (!(revival_width > 0.0)) throw std::invalid_argument("decoherence: revival_width must be > 0");
  if (!std::isfinite(hyperfine_a) || !std::isfinite(ramsey_detuning)) {
    throw std::invalid_argument("decoherence: non-finite frequency");
  }
}

double ramsey_envelope(double tau, const DecoherenceParams& p) {
  if (!(tau >= 0.0)) throw std::invalid_argument("ramsey_envelope: tau must be >= 0");
  const double x = tau / p.t2_star;
  const double beat = (1.0 + 2.0 * std::cos(kTwoPi * p.hyperfine_a * tau)) / 3.0;
  return std::exp(-x * x) * beat * std::cos(kTwoPi * p.ramsey_detuning * tau);
}

double echo_envelope(double tau, const DecoherenceParams& p) {
  if (!(tau >= 0.0)) throw std::invalid_argument("echo_envelope: tau must be >= 0");
  return std::exp(-std::pow(tau / p.t2, p.stretch_n));
}

std::vector<double> revival_times(double b_z_eff, const DecoherenceParams& p, int j_max) {
  if (!(b_z_eff > 0.0)) {
    throw std::invalid_argument("revival_times: b_z_eff must be > 0 (no revivals at zero field)");
  }
  if (j_max < 0) throw std::invalid_argument("revival_times: j_max must be >= 0");
  const double spacing = 2.0 / (p.gamma_c13 * b_z_eff);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(j_max));
  for (int j = 1; j <= j_max; ++j) out.push_back(j * spacing);
  return out;
}

double revival_modulation(double tau, double b_z_eff, const DecoherenceParams& p) {
  if (!(tau >= 0.0)) throw std::invalid_argument("revival_modulation: tau must be >= 0");
  auto bump = [&](double center) {
    const double z = (tau - center) / p.revival_width;
    return std::exp(-0.5 * z * z);
  };
  double sum = bump(0.0);
  const double b = std::abs(b_z_eff);
  if (b > 0.0) {
    const double spacing = 2.0 / (p.gamma_c13 * b);
    // Only revivals within ~10 widths contribute above double precision.
    const double reach = 10.0 * p.revival_width;
    const auto j_lo = static_cast<long>(std::max(1.0, std::floor((tau - reach) / spacing)));
    const auto j_hi = static_cast<long>(std::ceil((tau + reach) / spacing));
    for (long j = j_lo; j <= j_hi; ++j) sum += bump(static_cast<double>(j) * spacing);
  }
  return std::clamp(sum, 0.0, 1.0);
}

double effective_bz_for_bath(double b_z, double f_rot, Sense sense, double gamma_nuc) {
  return b_z + pseudo_field(f_rot, gamma_nuc, sense);
}

double echo_contrast(double tau, double b_z_eff, const DecoherenceParams& p) {
  const double envelope = echo_envelope(tau, p);
  return p.c13_revivals ? envelope * revival_modulation(tau, b_z_eff, p) : envelope;
}

}  // namespace spinrot
