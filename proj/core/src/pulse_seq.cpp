#include "spinrot/pulse_seq.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace spinrot {

namespace {

constexpr double kAngleTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) < kAngleTol; }

bool is_half_pi_family(const Pulse& p) {
  return near(p.angle, kPi / 2.0) || near(p.angle, 1.5 * kPi);
}

// Breakpoints and signs of the toggling frame, in sequence time.
struct Segments {
  std::vector<double> edges;
  std::vector<int> signs;
};

Segments segments_of(const PulseSequence& seq) {
  Segments s;
  s.edges.push_back(seq.start());
  for (double t : seq.pi_times()) s.edges.push_back(t);
  s.edges.push_back(seq.end());
  int sign = 1;
  for (std::size_t k = 0; k + 1 < s.edges.size(); ++k) {
    s.signs.push_back(sign);
    sign = -sign;
  }
  return s;
}

// Antiderivative of gamma_e * B_UC(t) in lab time, in cycles. Rotating rotor only.
double upconverted_antiderivative(double t, const FieldVector& b, const RotorNV& r) {
  const double omega = r.angular_rate();
  const double a = omega * t - r.phi0;
  return r.gamma_e * std::sin(r.theta_nv) * (b.by * std::sin(a) - b.bx * std::cos(a)) / omega;
}

// Cycles accumulated over lab window [t0, t1] + d, unsigned.
double window_cycles(double t0, double t1, double d, const FieldVector& b, const RotorNV& r,
                     double offset_hz) {
  const double dt = t1 - t0;
  if (!(r.f_rot > 0.0)) {
    return (offset_hz - r.gamma_e * axial_projection(0.0, b, r)) * dt;
  }
  const double constant = offset_hz - r.gamma_e * b.bz * std::cos(r.theta_nv);
  return constant * dt + (upconverted_antiderivative(t1 + d, b, r) -
                          upconverted_antiderivative(t0 + d, b, r));
}

}  // namespace

bool Pulse::is_pi() const { return kind == PulseKind::control && near(angle, kPi); }

PulseSequence::PulseSequence(std::vector<Pulse> pulses, double trigger_delay)
    : pulses_(std::move(pulses)), trigger_delay_(trigger_delay) {
  if (pulses_.size() < 2) throw std::invalid_argument("pulse sequence needs at least two pulses");
  if (!std::isfinite(trigger_delay_)) throw std::invalid_argument("trigger_delay must be finite");
  for (std::size_t k = 0; k < pulses_.size(); ++k) {
    if (!(pulses_[k].t >= 0.0) || !std::isfinite(pulses_[k].t)) {
      throw std::invalid_argument("pulse times must be finite and >= 0");
    }
    if (k > 0 && !(pulses_[k].t > pulses_[k - 1].t)) {
      throw std::invalid_argument("pulses must be strictly time-ordered");
    }
  }
  if (!is_half_pi_family(pulses_.front()) || !is_half_pi_family(pulses_.back())) {
    throw std::invalid_argument("first and last pulses must be pi/2 or 3pi/2");
  }
}

Readout PulseSequence::readout() const {
  return near(pulses_.back().angle, kPi / 2.0) ? Readout::half_pi : Readout::three_half_pi;
}

std::vector<double> PulseSequence::pi_times() const {
  std::vector<double> out;
  for (std::size_t k = 1; k + 1 < pulses_.size(); ++k) {
    if (pulses_[k].is_pi()) out.push_back(pulses_[k].t);
  }
  return out;
}

PulseSequence PulseSequence::with_trigger_delay(double delay) const {
  return PulseSequence(pulses_, delay);
}

PulseSequence PulseSequence::with_readout(Readout readout) const {
  auto p = pulses_;
  p.back().angle = readout == Readout::half_pi ? kPi / 2.0 : 1.5 * kPi;
  return PulseSequence(std::move(p), trigger_delay_);
}

namespace {

Pulse projection(double t, Readout readout) {
  return {t, readout == Readout::half_pi ? kPi / 2.0 : 1.5 * kPi, PulseKind::readout_projection};
}

void require_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be > 0");
}

}  // namespace

PulseSequence build_ramsey(double tau, Readout readout) {
  require_tau(tau);
  return PulseSequence({{0.0, kPi / 2.0, PulseKind::control}, projection(tau, readout)});
}

PulseSequence build_echo(double tau, Readout readout) { return build_cpmg(1, tau, readout); }

PulseSequence build_cpmg(int n, double tau, Readout readout) {
  require_tau(tau);
  if (n < 1) throw std::invalid_argument("build_cpmg: n must be >= 1");
  std::vector<Pulse> p;
  p.reserve(static_cast<std::size_t>(n) + 2);
  p.push_back({0.0, kPi / 2.0, PulseKind::control});
  for (int k = 1; k <= n; ++k) {
    p.push_back({tau * (2.0 * k - 1.0) / (2.0 * n), kPi, PulseKind::control});
  }
  p.push_back(projection(tau, readout));
  return PulseSequence(std::move(p));
}

int sign_function(const PulseSequence& seq, double t) {
  if (!(t > seq.start() && t < seq.end())) return 0;
  int sign = 1;
  for (double tp : seq.pi_times()) {
    if (t >= tp) sign = -sign;
  }
  return sign;
}

double accumulated_phase(const PulseSequence& seq, const FieldVector& b, const RotorNV& r,
                         double offset_hz) {
  const Segments s = segments_of(seq);
  double cycles = 0.0;
  for (std::size_t k = 0; k < s.signs.size(); ++k) {
    cycles += s.signs[k] *
              window_cycles(s.edges[k], s.edges[k + 1], seq.trigger_delay(), b, r, offset_hz);
  }
  return kTwoPi * cycles;
}

double accumulated_phase_quadrature(const PulseSequence& seq, const FieldVector& b,
                                    const RotorNV& r, double offset_hz) {
  using boost::math::quadrature::gauss_kronrod;
  const Segments s = segments_of(seq);
  const double d = seq.trigger_delay();
  auto integrand = [&](double t) {
    return offset_hz - r.gamma_e * axial_projection(t + d, b, r);
  };
  double cycles = 0.0;
  for (std::size_t k = 0; k < s.signs.size(); ++k) {
    const double part =
        gauss_kronrod<double, 31>::integrate(integrand, s.edges[k], s.edges[k + 1], 10, 1e-10);
    cycles += s.signs[k] * part;
  }
  return kTwoPi * cycles;
}

std::pair<double, double> half_window_phases(const PulseSequence& seq, const FieldVector& b,
                                             const RotorNV& r) {
  const auto pis = seq.pi_times();
  if (pis.empty()) throw std::invalid_argument("half_window_phases: no pi pulse");
  const double d = seq.trigger_delay();
  auto window = [&](double t0, double t1) {
    return kTwoPi * window_cycles(t0, t1, d, b, r, 0.0);
  };
  return {window(seq.start(), pis.front()), window(pis.front(), seq.end())};
}

std::optional<double> zero_crossing_delay(const PulseSequence& seq, const RotorNV& r) {
  const auto pis = seq.pi_times();
  if (pis.empty()) throw std::invalid_argument("zero_crossing_delay: sequence has no pi pulse");
  if (!(r.f_rot > 0.0)) return std::nullopt;
  const double omega = r.angular_rate();
  const double half_period = kPi / omega;
  // Omega (t_pi + d) - phi0 = pi/2 (mod pi)
  const double raw = (kPi / 2.0 + r.phi0) / omega - pis.front();
  double d = std::fmod(raw, half_period);
  if (d < 0.0) d += half_period;
  return d;
}

double phase_reduction_factor(double tau, const RotorNV& r) {
  if (!(r.f_rot > 0.0)) throw std::invalid_argument("phase_reduction_factor: rotor is stationary");
  if (!(tau > 0.0) || tau > r.period() * (1.0 + 1e-12)) {
    throw std::invalid_argument("phase_reduction_factor: need 0 < tau <= 1/f_rot");
  }
  const double half_angle = r.angular_rate() * tau / 2.0;
  return 4.0 / (2.0 * (1.0 - std::cos(half_angle)));
}

double phase_reduction_factor_quadrature(double tau, const RotorNV& r) {
  if (!(r.f_rot > 0.0)) throw std::invalid_argument("phase_reduction_factor: rotor is stationary");
  if (!(tau > 0.0) || tau > r.period() * (1.0 + 1e-12)) {
    throw std::invalid_argument("phase_reduction_factor: need 0 < tau <= 1/f_rot");
  }
  const FieldVector probe{0.0, 1e-6, 0.0};
  auto synced = [&](double window) {
    const PulseSequence echo = build_echo(window);
    return echo.with_trigger_delay(*zero_crossing_delay(echo, r));
  };
  const double full = accumulated_phase_quadrature(synced(r.period()), probe, r);
  const double part = accumulated_phase_quadrature(synced(tau), probe, r);
  return std::abs(full / part);
}

}  // namespace spinrot
