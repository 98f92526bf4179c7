#pragma once

#include <array>

#include <Eigen/Dense>

#include "spinrot/units.hpp"

namespace spinrot {

using Vec3 = std::array<double, 3>;

/// Static laboratory magnetic field, tesla.
struct FieldVector {
  double bx = 0.0;
  double by = 0.0;
  double bz = 0.0;

  double magnitude() const;
  bool finite() const;

  friend FieldVector operator+(const FieldVector& a, const FieldVector& b) {
    return {a.bx + b.bx, a.by + b.by, a.bz + b.bz};
  }
  friend FieldVector operator*(double s, const FieldVector& a) {
    return {s * a.bx, s * a.by, s * a.bz};
  }
  friend bool operator==(const FieldVector&, const FieldVector&) = default;
};

/// Sense of the physical rotation relative to the nuclear Larmor precession.
enum class Sense { co, counter };

/// A rotating NV orientation class.
///
/// The NV axis sits on a cone of half-angle `theta_nv` around the lab z axis
/// and sweeps it at `f_rot`. At lab time t its transverse projection points
/// along -(sin a, cos a, 0) with a = Omega*t - phi0, so a field along +y
/// lowers the axial projection by B_UC(t).
struct RotorNV {
  double f_rot = 0.0;                                // Hz
  double theta_nv = 0.0;                             // rad
  double phi0 = 0.0;                                 // rad
  double d_zfs = constants::kZeroFieldSplitting;     // Hz
  double gamma_e = constants::kGammaElectron;        // Hz/T

  double angular_rate() const { return kTwoPi * f_rot; }
  /// Rotation period; infinite when stationary.
  double period() const;
  /// Throws std::invalid_argument when outside the physical domain.
  void validate() const;
};

/// Unit vector of the NV symmetry axis at lab time t.
Vec3 nv_axis(double t, const RotorNV& r);

/// Field component modulated at the rotation frequency, as seen along the
/// NV axis: sin(theta) * (by cos(Omega t - phi0) + bx sin(Omega t - phi0)).
double upconverted_field(double t, const FieldVector& b, const RotorNV& r);

/// Field projected onto the NV axis at time t: bz cos(theta) - B_UC(t).
double axial_projection(double t, const FieldVector& b, const RotorNV& r);

/// Magnitude of the field component perpendicular to the NV axis at time t.
double transverse_magnitude(double t, const FieldVector& b, const RotorNV& r);

/// Field components in the instantaneous NV frame (x', y', z'), z' = axis.
FieldVector field_in_nv_frame(double t, const FieldVector& b, const RotorNV& r);

struct FrequencyEstimate {
  double hz = 0.0;
  /// Set when the transverse field exceeds the linear-model validity bound.
  bool beyond_linear_bound = false;
};

/// 0 -> -1 transition frequency in the linear Zeeman model:
/// d_zfs - gamma_e * bz cos(theta) + gamma_e * B_UC(t).
FrequencyEstimate transition_frequency_linear(double t, const FieldVector& b,
                                              const RotorNV& r);

/// Ground-state spin-1 Hamiltonian D Sz'^2 + gamma S.B, in hertz.
struct SpinHamiltonian {
  double d_zfs = constants::kZeroFieldSplitting;
  FieldVector field_nv_frame{};
  double gamma_e = constants::kGammaElectron;

  /// Matrix in the |+1>, |0>, |-1> basis.
  Eigen::Matrix3cd matrix() const;

  static const Eigen::Matrix3cd& sx();
  static const Eigen::Matrix3cd& sy();
  static const Eigen::Matrix3cd& sz();
};

struct TransitionPair {
  double lower = 0.0;  // Hz; the 0 -> -1 line for a positive axial field
  double upper = 0.0;  // Hz
};

/// Exact transition frequencies out of the m_s = 0-like eigenstate, sorted.
/// Throws NumericalError when that state is degenerate with another level.
TransitionPair transition_frequency_exact(const SpinHamiltonian& h);

/// Effective field felt by nuclei in the rotating frame: +f_rot/gamma_nuc
/// when the rotation opposes the nuclear precession, negative otherwise.
double pseudo_field(double f_rot, double gamma_nuc, Sense sense);

/// Solid-angle phase accumulated over n_rot revolutions of the NV axis.
double geometric_phase(double theta_nv, double n_rot);

}  // namespace spinrot
