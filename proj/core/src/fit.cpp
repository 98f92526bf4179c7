#include "spinrot/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "spinrot/error.hpp"
#include "spinrot/units.hpp"

namespace spinrot {

double SinusoidFit::ds_db() const { return amplitude * kTwoPi / period; }

double SinusoidFit::evaluate(double x) const {
  return amplitude * std::sin(kTwoPi * x / period + phase) + offset;
}

double SinusoidFit::zero_crossing_near(double near) const {
  // sin(2 pi x / P + phase) = 0  =>  x = (k pi - phase) P / (2 pi)
  const double k = std::round((kTwoPi * near / period + phase) / kPi);
  return (k * kPi - phase) * period / kTwoPi;
}

namespace {

// Linear parameters a sin(w x) + b cos(w x) + c at fixed angular frequency.
struct Linear {
  double a, b, c, chi2;
};

Linear solve_linear(std::span<const FitPoint> pts, double x0, double w) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = pts[static_cast<std::size_t>(i)];
    const double u = w * (p.x - x0);
    const double wt = 1.0 / p.sigma;
    A(i, 0) = std::sin(u) * wt;
    A(i, 1) = std::cos(u) * wt;
    A(i, 2) = wt;
    y(i) = p.y * wt;
  }
  const Eigen::Vector3d sol = A.colPivHouseholderQr().solve(y);
  return {sol(0), sol(1), sol(2), (A * sol - y).squaredNorm()};
}

struct Model {
  double a, b, c, w;
};

double chi2_of(std::span<const FitPoint> pts, double x0, const Model& m) {
  double s = 0.0;
  for (const auto& p : pts) {
    const double u = m.w * (p.x - x0);
    const double r = (p.y - (m.a * std::sin(u) + m.b * std::cos(u) + m.c)) / p.sigma;
    s += r * r;
  }
  return s;
}

// Weighted Jacobian (rows scaled by 1/sigma) and weighted residual vector.
void jacobian(std::span<const FitPoint> pts, double x0, const Model& m, Eigen::MatrixXd& J,
              Eigen::VectorXd& r) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  J.resize(n, 4);
  r.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = pts[static_cast<std::size_t>(i)];
    const double dx = p.x - x0;
    const double s = std::sin(m.w * dx);
    const double c = std::cos(m.w * dx);
    const double wt = 1.0 / p.sigma;
    J(i, 0) = s * wt;
    J(i, 1) = c * wt;
    J(i, 2) = wt;
    J(i, 3) = dx * (m.a * c - m.b * s) * wt;
    r(i) = (p.y - (m.a * s + m.b * c + m.c)) * wt;
  }
}

std::string diagnostics(std::span<const FitPoint> pts, double x0, const Model& m) {
  const double chi2 = chi2_of(pts, x0, m);
  std::ostringstream os;
  os << " [n=" << pts.size() << ", chi2=" << chi2
     << ", chi2/dof=" << chi2 / std::max<double>(1.0, static_cast<double>(pts.size()) - 4.0)
     << ", amplitude=" << std::hypot(m.a, m.b) << ", period=" << kTwoPi / m.w << "]";
  return os.str();
}

}  // namespace

SinusoidFit fit_sinusoid(std::span<const FitPoint> points) {
  if (points.size() < 5) throw std::invalid_argument("fit_sinusoid: need at least 5 points");
  for (const auto& p : points) {
    if (!(p.sigma > 0.0) || !std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.sigma)) {
      throw std::invalid_argument("fit_sinusoid: points need finite values and sigma > 0");
    }
  }
  const auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                            [](const auto& a, const auto& b) { return a.x < b.x; });
  const double span = hi->x - lo->x;
  if (!(span > 0.0)) throw std::invalid_argument("fit_sinusoid: abscissae do not span an interval");
  double x0 = 0.0;
  for (const auto& p : points) x0 += p.x;
  x0 /= static_cast<double>(points.size());

  // Frequencies (cycles per unit x) from below half a fringe up to eight
  // samples per fringe.
  const double f_min = 0.25 / span;
  const double f_max = std::max(1.0, static_cast<double>(points.size() - 1) / 8.0) / span;
  const double f_step = 0.02 / span;
  Linear best{0, 0, 0, std::numeric_limits<double>::infinity()};
  double best_w = kTwoPi * f_min;
  for (double f = f_min; f <= f_max; f += f_step) {
    const Linear l = solve_linear(points, x0, kTwoPi * f);
    if (l.chi2 < best.chi2) {
      best = l;
      best_w = kTwoPi * f;
    }
  }

  Model m{best.a, best.b, best.c, best_w};
  double chi2 = chi2_of(points, x0, m);
  double lambda = 1e-3;
  int it = 0;
  bool converged = false;
  Eigen::MatrixXd J;
  Eigen::VectorXd r;
  for (; it < 500; ++it) {
    jacobian(points, x0, m, J, r);
    const Eigen::Matrix4d JtJ = J.transpose() * J;
    const Eigen::Vector4d Jtr = J.transpose() * r;
    bool improved = false;
    while (lambda < 1e12) {
      Eigen::Matrix4d H = JtJ;
      for (int k = 0; k < 4; ++k) H(k, k) *= 1.0 + lambda;
      const Eigen::Vector4d step = H.ldlt().solve(Jtr);
      const Model trial{m.a + step(0), m.b + step(1), m.c + step(2), m.w + step(3)};
      const double trial_chi2 = chi2_of(points, x0, trial);
      if (trial_chi2 <= chi2) {
        const double drop = chi2 - trial_chi2;
        const bool small_step = std::abs(step(3)) <= 1e-14 * std::abs(m.w) &&
                                std::abs(step(0)) + std::abs(step(1)) + std::abs(step(2)) <=
                                    1e-14 * (std::abs(m.a) + std::abs(m.b) + std::abs(m.c) + 1e-300);
        m = trial;
        chi2 = trial_chi2;
        lambda = std::max(lambda * 0.1, 1e-15);
        improved = true;
        if (drop <= 1e-15 * chi2 || chi2 < 1e-28 || small_step) converged = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) {
      converged = true;  // no downhill step left at any damping
      break;
    }
    if (converged) break;
  }
  if (!converged) throw NumericalError("fit_sinusoid: did not converge" + diagnostics(points, x0, m));

  if (m.w < 0.0) {  // a sin(-w x) + b cos(-w x) = -a sin(w x) + b cos(w x)
    m.w = -m.w;
    m.a = -m.a;
  }

  jacobian(points, x0, m, J, r);
  const Eigen::Matrix4d cov = (J.transpose() * J).inverse();
  SinusoidFit out;
  out.amplitude = std::hypot(m.a, m.b);
  out.period = kTwoPi / m.w;
  out.offset = m.c;
  // a sin(u) + b cos(u) = A sin(u + phi), phi = atan2(b, a); shift u back to raw x.
  out.phase = std::remainder(std::atan2(m.b, m.a) - m.w * x0, kTwoPi);
  if (out.amplitude > 0.0) {
    const Eigen::Vector2d g(m.a / out.amplitude, m.b / out.amplitude);
    out.amplitude_error = std::sqrt(std::max(0.0, g.dot(cov.topLeftCorner<2, 2>() * g)));
  } else {
    out.amplitude_error = std::sqrt(std::max(cov(0, 0), cov(1, 1)));
  }
  out.period_error = std::sqrt(std::max(0.0, cov(3, 3))) * kTwoPi / (m.w * m.w);
  out.chi2 = chi2;
  out.dof = static_cast<int>(points.size()) - 4;
  out.iterations = it;

  if (!(out.amplitude > 3.0 * out.amplitude_error)) {
    throw NumericalError("fit_sinusoid: amplitude consistent with zero" +
                         diagnostics(points, x0, m));
  }
  if (span / out.period < 0.5) {
    throw NumericalError("fit_sinusoid: data span less than half a fringe" +
                         diagnostics(points, x0, m));
  }
  return out;
}

}  // namespace spinrot
