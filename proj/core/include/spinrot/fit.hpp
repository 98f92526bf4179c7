#pragma once

#include <span>

namespace spinrot {

struct FitPoint {
  double x = 0.0;      // abscissa, e.g. applied field in tesla
  double y = 0.0;      // signal
  double sigma = 0.0;  // standard error of y, > 0
};

/// y = amplitude * sin(2 pi x / period + phase) + offset
struct SinusoidFit {
  double amplitude = 0.0;  // >= 0
  double period = 0.0;
  double phase = 0.0;
  double offset = 0.0;
  double amplitude_error = 0.0;
  double period_error = 0.0;
  double chi2 = 0.0;
  int dof = 0;
  int iterations = 0;

  /// Slope at the steepest point of the fringe: amplitude * 2 pi / period.
  double ds_db() const;
  double evaluate(double x) const;
  /// Abscissa of the zero crossing of (y - offset) closest to `near`.
  double zero_crossing_near(double near) const;
};

/// Weighted least-squares sinusoid fit.
///
/// A frequency grid seeded linear solve picks the starting point, then
/// Levenberg-Marquardt refines all four parameters. Requires >= 5 points with
/// positive sigma. Throws NumericalError (with chi2 and residual diagnostics)
/// when the fit does not converge, the data span less than half a fringe, or
/// the amplitude is consistent with zero at 3 sigma.
SinusoidFit fit_sinusoid(std::span<const FitPoint> points);

}  // namespace spinrot
