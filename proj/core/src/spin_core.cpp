#include "spinrot/spin_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "spinrot/error.hpp"

namespace spinrot {

double FieldVector::magnitude() const { return std::sqrt(bx * bx + by * by + bz * bz); }

bool FieldVector::finite() const {
  return std::isfinite(bx) && std::isfinite(by) && std::isfinite(bz);
}

double RotorNV::period() const {
  return f_rot > 0.0 ? 1.0 / f_rot : std::numeric_limits<double>::infinity();
}

void RotorNV::validate() const {
  if (!(f_rot >= 0.0) || !std::isfinite(f_rot)) {
    throw std::invalid_argument("rotor: f_rot must be finite and >= 0");
  }
  if (!(theta_nv >= 0.0 && theta_nv <= kPi)) {
    throw std::invalid_argument("rotor: theta_nv must lie in [0, pi]");
  }
  if (!(d_zfs > 0.0)) throw std::invalid_argument("rotor: d_zfs must be > 0");
  if (!(gamma_e > 0.0)) throw std::invalid_argument("rotor: gamma_e must be > 0");
  if (!std::isfinite(phi0)) throw std::invalid_argument("rotor: phi0 must be finite");
}

namespace {

double azimuth(double t, const RotorNV& r) { return r.angular_rate() * t - r.phi0; }

}  // namespace

Vec3 nv_axis(double t, const RotorNV& r) {
  const double a = azimuth(t, r);
  const double s = std::sin(r.theta_nv);
  return {-s * std::sin(a), -s * std::cos(a), std::cos(r.theta_nv)};
}

double upconverted_field(double t, const FieldVector& b, const RotorNV& r) {
  const double a = azimuth(t, r);
  return std::sin(r.theta_nv) * (b.by * std::cos(a) + b.bx * std::sin(a));
}

double axial_projection(double t, const FieldVector& b, const RotorNV& r) {
  return b.bz * std::cos(r.theta_nv) - upconverted_field(t, b, r);
}

FieldVector field_in_nv_frame(double t, const FieldVector& b, const RotorNV& r) {
  const double a = azimuth(t, r);
  const double ct = std::cos(r.theta_nv);
  const double st = std::sin(r.theta_nv);
  const double ca = std::cos(a);
  const double sa = std::sin(a);
  // z' = n, x' = dn/dtheta, y' = z' cross x'
  const Vec3 zp{-st * sa, -st * ca, ct};
  const Vec3 xp{-ct * sa, -ct * ca, -st};
  const Vec3 yp{zp[1] * xp[2] - zp[2] * xp[1], zp[2] * xp[0] - zp[0] * xp[2],
                zp[0] * xp[1] - zp[1] * xp[0]};
  auto dot = [&](const Vec3& u) { return u[0] * b.bx + u[1] * b.by + u[2] * b.bz; };
  return {dot(xp), dot(yp), dot(zp)};
}

double transverse_magnitude(double t, const FieldVector& b, const RotorNV& r) {
  const FieldVector f = field_in_nv_frame(t, b, r);
  return std::hypot(f.bx, f.by);
}

FrequencyEstimate transition_frequency_linear(double t, const FieldVector& b,
                                              const RotorNV& r) {
  const double omega0 = r.d_zfs - r.gamma_e * b.bz * std::cos(r.theta_nv);
  return {omega0 + r.gamma_e * upconverted_field(t, b, r),
          transverse_magnitude(t, b, r) > constants::kLinearTransverseBound};
}

const Eigen::Matrix3cd& SpinHamiltonian::sx() {
  static const Eigen::Matrix3cd m = [] {
    Eigen::Matrix3cd s = Eigen::Matrix3cd::Zero();
    s(0, 1) = s(1, 0) = s(1, 2) = s(2, 1) = 1.0 / std::sqrt(2.0);
    return s;
  }();
  return m;
}

const Eigen::Matrix3cd& SpinHamiltonian::sy() {
  static const Eigen::Matrix3cd m = [] {
    const std::complex<double> i(0.0, 1.0 / std::sqrt(2.0));
    Eigen::Matrix3cd s = Eigen::Matrix3cd::Zero();
    s(0, 1) = -i;
    s(1, 0) = i;
    s(1, 2) = -i;
    s(2, 1) = i;
    return s;
  }();
  return m;
}

const Eigen::Matrix3cd& SpinHamiltonian::sz() {
  static const Eigen::Matrix3cd m = Eigen::Vector3cd(1.0, 0.0, -1.0).asDiagonal();
  return m;
}

Eigen::Matrix3cd SpinHamiltonian::matrix() const {
  const FieldVector& f = field_nv_frame;
  return d_zfs * sz() * sz() + gamma_e * (f.bx * sx() + f.by * sy() + f.bz * sz());
}

TransitionPair transition_frequency_exact(const SpinHamiltonian& h) {
  if (!h.field_nv_frame.finite()) {
    throw std::invalid_argument("transition_frequency_exact: non-finite field");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("transition_frequency_exact: eigensolver did not converge");
  }
  const Eigen::Vector3d& e = solver.eigenvalues();
  const Eigen::Matrix3cd& v = solver.eigenvectors();

  // The m_s = 0-like state carries the largest weight on basis index 1.
  int zero = 0;
  for (int k = 1; k < 3; ++k) {
    if (std::norm(v(1, k)) > std::norm(v(1, zero))) zero = k;
  }

  const double scale = h.d_zfs + h.gamma_e * h.field_nv_frame.magnitude();
  const double tol = 1e-9 * scale;
  double gaps[2];
  int n = 0;
  for (int k = 0; k < 3; ++k) {
    if (k == zero) continue;
    const double gap = e(k) - e(zero);
    if (std::abs(gap) < tol) {
      throw NumericalError("transition_frequency_exact: level crossing with the m_s=0 state (gap " +
                           std::to_string(gap) + " Hz)");
    }
    gaps[n++] = std::abs(gap);
  }
  if (std::norm(v(1, zero)) <= 0.5) {
    throw NumericalError("transition_frequency_exact: m_s=0 character is ambiguous (strong mixing)");
  }
  return {std::min(gaps[0], gaps[1]), std::max(gaps[0], gaps[1])};
}

double pseudo_field(double f_rot, double gamma_nuc, Sense sense) {
  if (!(gamma_nuc > 0.0)) throw std::invalid_argument("pseudo_field: gamma_nuc must be > 0");
  const double magnitude = f_rot / gamma_nuc;
  return sense == Sense::counter ? magnitude : -magnitude;
}

double geometric_phase(double theta_nv, double n_rot) {
  if (!(theta_nv >= 0.0 && theta_nv <= kPi)) {
    throw std::invalid_argument("geometric_phase: theta_nv must lie in [0, pi]");
  }
  return n_rot * kTwoPi * (1.0 - std::cos(theta_nv));
}

}  // namespace spinrot
