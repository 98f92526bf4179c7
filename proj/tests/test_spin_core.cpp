#include <doctest.h>

#include <cmath>
#include <complex>

#include "spinrot/error.hpp"
#include "spinrot/spin_core.hpp"

using namespace spinrot;
using namespace spinrot::literals;
using doctest::Approx;

namespace {

RotorNV rotor(double f, double theta_deg, double phi0 = 0.0) {
  RotorNV r;
  r.f_rot = f;
  r.theta_nv = deg_to_rad(theta_deg);
  r.phi0 = phi0;
  return r;
}

// Second-order shift of the 0 -> -1 line for a transverse field b_perp on top
// of an axial field b_ax (both in the NV frame).
double second_order_lower(double b_ax, double b_perp) {
  const double g = constants::kGammaElectron, d = constants::kZeroFieldSplitting;
  const double v2 = 0.5 * (g * b_perp) * (g * b_perp);
  const double e_plus = d + g * b_ax, e_minus = d - g * b_ax;
  const double shift0 = -v2 / e_plus - v2 / e_minus;
  const double shift_minus = v2 / e_minus;
  return e_minus + shift_minus - shift0;
}

}  // namespace

TEST_CASE("nv_axis geometry") {
  const auto r = rotor(3333.0, 3.8);
  const auto n0 = nv_axis(0.0, r);
  CHECK(std::hypot(n0[0], n0[1], n0[2]) == Approx(1.0).epsilon(1e-15));
  CHECK(n0[2] == Approx(std::cos(3.8_deg)));
  CHECK(nv_axis(1.0, rotor(0.0, 0.0))[2] == 1.0);

  const auto n1 = nv_axis(r.period(), r);
  for (int i = 0; i < 3; ++i) CHECK(n1[i] == Approx(n0[i]).epsilon(1e-12));

  const auto q = nv_axis(0.25 * r.period(), r);
  CHECK(std::abs(n0[0] * q[0] + n0[1] * q[1]) < 1e-15);
}

TEST_CASE("upconverted_field") {
  const auto r = rotor(3333.0, 3.8);
  CHECK(upconverted_field(0.0, {0, 100_uT, 0}, r) == Approx(6.6285e-6).epsilon(1e-4));
  CHECK(upconverted_field(1e-5, {0, 0, 5.7_mT}, r) == 0.0);
  CHECK(upconverted_field(1e-5, {0, 100_uT, 0}, rotor(3333.0, 0.0)) == 0.0);

  // Periodic, odd about each zero crossing.
  const FieldVector b{0, 1_uT, 0};
  const double tz = 0.25 * r.period();
  CHECK(std::abs(upconverted_field(tz, b, r)) < 1e-20);
  for (double dt : {1e-6, 13e-6, 70e-6}) {
    CHECK(upconverted_field(tz + dt, b, r) == Approx(-upconverted_field(tz - dt, b, r)).epsilon(1e-9));
    CHECK(upconverted_field(dt + r.period(), b, r) == Approx(upconverted_field(dt, b, r)).epsilon(1e-9));
  }

  // x and y fields are quadratures of each other.
  CHECK(upconverted_field(tz, {1_uT, 0, 0}, r) == Approx(upconverted_field(0.0, b, r)));
}

TEST_CASE("axial projection is b dot n") {
  const auto r = rotor(2000.0, 54.7, 0.3);
  const FieldVector b{0.2_mT, -0.4_mT, 5.7_mT};
  for (double t : {0.0, 1e-4, 3.3e-4}) {
    const auto n = nv_axis(t, r);
    CHECK(axial_projection(t, b, r) == Approx(n[0] * b.bx + n[1] * b.by + n[2] * b.bz).epsilon(1e-14));
    const FieldVector f = field_in_nv_frame(t, b, r);
    CHECK(f.bz == Approx(axial_projection(t, b, r)).epsilon(1e-14));
    CHECK(f.magnitude() == Approx(b.magnitude()).epsilon(1e-14));
    CHECK(transverse_magnitude(t, b, r) == Approx(std::hypot(f.bx, f.by)));
  }
}

TEST_CASE("transition_frequency_linear") {
  RotorNV r = rotor(0.0, 3.8);
  CHECK(transition_frequency_linear(0.0, {}, r).hz == 2.87e9);
  CHECK(transition_frequency_linear(0.0, {0, 0, 5.7_mT}, r).hz == Approx(2.87e9 - 28e9 * 5.7e-3 * std::cos(3.8_deg)).epsilon(1e-12));
  CHECK(std::abs(transition_frequency_linear(0.0, {0, 0, 5.7_mT}, r).hz - 2.711e9) < 1e6);

  r.f_rot = 3333.0;
  const double at_zero = transition_frequency_linear(0.25 * r.period(), {0, 100_uT, 5.7_mT}, r).hz;
  CHECK(at_zero == Approx(transition_frequency_linear(0.0, {0, 0, 5.7_mT}, r).hz).epsilon(1e-15));

  CHECK_FALSE(transition_frequency_linear(0.0, {0.4_mT, 0, 0}, rotor(0, 0)).beyond_linear_bound);
  CHECK(transition_frequency_linear(0.0, {0.6_mT, 0, 0}, rotor(0, 0)).beyond_linear_bound);
}

TEST_CASE("Hamiltonian is Hermitian with spin-1 algebra") {
  SpinHamiltonian h;
  h.field_nv_frame = {0.3_mT, -0.2_mT, 5.7_mT};
  const auto m = h.matrix();
  CHECK((m - m.adjoint()).norm() < 1e-6);
  const auto& sx = SpinHamiltonian::sx();
  const auto& sy = SpinHamiltonian::sy();
  const auto& sz = SpinHamiltonian::sz();
  const std::complex<double> i(0, 1);
  CHECK((sx * sy - sy * sx - i * sz).norm() < 1e-15);
  CHECK((sx * sx + sy * sy + sz * sz - 2.0 * Eigen::Matrix3cd::Identity()).norm() < 1e-15);
}

TEST_CASE("transition_frequency_exact") {
  SpinHamiltonian h;
  auto zero = transition_frequency_exact(h);
  CHECK(zero.lower == Approx(2.87e9).epsilon(1e-12));
  CHECK(zero.upper == Approx(2.87e9).epsilon(1e-12));

  h.field_nv_frame = {0, 0, 5.7_mT};
  const auto ax = transition_frequency_exact(h);
  CHECK(ax.lower == Approx(2.87e9 - 159.6e6).epsilon(1e-9));
  CHECK(ax.upper == Approx(2.87e9 + 159.6e6).epsilon(1e-9));

  // Purely transverse: closed form for the spin-1 Hamiltonian with B along x.
  h.field_nv_frame = {0.5_mT, 0, 0};
  const auto tr = transition_frequency_exact(h);
  const double gb = constants::kGammaElectron * 0.5_mT, d = constants::kZeroFieldSplitting;
  const double e0 = 0.5 * (d - std::sqrt(d * d + 4 * gb * gb));
  CHECK(tr.lower == Approx(d - e0).epsilon(1e-12));
  CHECK(tr.upper == Approx(std::sqrt(d * d + 4 * gb * gb)).epsilon(1e-12));
  CHECK(tr.lower - d == Approx(gb * gb / d).epsilon(1e-3));
  CHECK(tr.lower - d == Approx(68.3e3).epsilon(1e-2));
}

TEST_CASE("exact minus linear bounded by the second-order term") {
  const RotorNV r = rotor(0.0, 0.0);
  const double g = constants::kGammaElectron, d = constants::kZeroFieldSplitting;
  for (double bias : {5e-3, 5.7e-3, 8e-3}) {
    for (int i = 0; i <= 10; ++i) {
      for (int j = 0; j <= 10; ++j) {
        const double bx = 1e-3 * (i / 10.0), by = 1e-3 * (j / 10.0) * 0.7;
        const double bperp = std::hypot(bx, by);
        if (bperp > 1e-3) continue;
        SpinHamiltonian h;
        h.field_nv_frame = {bx, by, bias};
        const double exact = transition_frequency_exact(h).lower;
        const double linear = transition_frequency_linear(0.0, {bx, by, bias}, r).hz;
        CHECK(std::abs(exact - linear) <= 2 * (g * bperp) * (g * bperp) / d + 1.0);
        CHECK(exact == Approx(second_order_lower(bias, bperp)).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("level crossing is reported") {
  SpinHamiltonian h;
  h.field_nv_frame = {0, 0, constants::kZeroFieldSplitting / constants::kGammaElectron};
  CHECK_THROWS_AS(transition_frequency_exact(h), NumericalError);
  h.field_nv_frame = {NAN, 0, 0};
  CHECK_THROWS(transition_frequency_exact(h));
}

TEST_CASE("pseudo_field") {
  CHECK(pseudo_field(3333.0, 10.7e6, Sense::counter) == Approx(0.3115e-3).epsilon(1e-4));
  CHECK(pseudo_field(3333.0, 10.7e6, Sense::co) == Approx(-0.3115e-3).epsilon(1e-4));
  CHECK(pseudo_field(0.0, 10.7e6, Sense::counter) == 0.0);
  CHECK(pseudo_field(5200.0, 10.7e6, Sense::counter) == Approx(0.486e-3).epsilon(1e-3));
  CHECK(pseudo_field(2 * 3333.0, 10.7e6, Sense::counter) == 2 * pseudo_field(3333.0, 10.7e6, Sense::counter));
  CHECK_THROWS(pseudo_field(1.0, 0.0, Sense::co));
}

TEST_CASE("geometric_phase") {
  CHECK(geometric_phase(0.0, 1.0) == 0.0);
  CHECK(geometric_phase(54.7_deg, 1.0) == Approx(2.6524).epsilon(1e-4));
  CHECK(geometric_phase(90_deg, 1.0) == Approx(kTwoPi));
  CHECK(geometric_phase(54.7_deg, 2.5) == Approx(geometric_phase(54.7_deg, 1.0) + geometric_phase(54.7_deg, 1.5)));
  CHECK_THROWS(geometric_phase(-0.1, 1.0));
}

TEST_CASE("rotor validation") {
  CHECK_THROWS(rotor(-1.0, 3.8).validate());
  CHECK_THROWS(rotor(1.0, 200.0).validate());
  CHECK_NOTHROW(rotor(3333.0, 3.8).validate());
  CHECK(std::isinf(rotor(0.0, 3.8).period()));
}

TEST_CASE("pure functions are bit-identical") {
  const auto r = rotor(3333.0, 3.8, 0.7);
  const FieldVector b{1_uT, 2_uT, 5.7_mT};
  CHECK(axial_projection(1.234e-4, b, r) == axial_projection(1.234e-4, b, r));
  SpinHamiltonian h;
  h.field_nv_frame = b;
  CHECK(transition_frequency_exact(h).lower == transition_frequency_exact(h).lower);
}
