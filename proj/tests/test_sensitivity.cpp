#include <doctest.h>

#include <cmath>

#include "spinrot/error.hpp"
#include "spinrot/sensitivity.hpp"
#include "spinrot/units.hpp"

using namespace spinrot;
using namespace spinrot::literals;
using doctest::Approx;

TEST_CASE("minimum detectable field and operating sensitivity") {
  CHECK(min_detectable_field(3.1e-3, 9.5e3) == Approx(0.326e-6).epsilon(1e-2));
  CHECK(min_detectable_field(6.2e-3, 9.5e3) == Approx(2 * min_detectable_field(3.1e-3, 9.5e3)));
  CHECK(operating_sensitivity(0.33e-6, 300.0) == Approx(5.72e-6).epsilon(1e-3));
  CHECK_THROWS_AS(min_detectable_field(1e-3, 0.0), NumericalError);
  CHECK_THROWS(operating_sensitivity(1e-6, 0.0));
}

TEST_CASE("shot-noise sensitivity in both gamma conventions") {
  const double tau = 124_us, td = 476_us;
  const double cycles = shot_noise_sensitivity(0.02, 3.8_deg, tau, td, 28e9, GammaConvention::cycles);
  const double angular = shot_noise_sensitivity(0.02, 3.8_deg, tau, td, 28e9, GammaConvention::angular);
  const double oracle = kPi / (28e9 * 2 * 0.02 * std::sin(3.8_deg)) * std::sqrt(tau + td) / tau;
  CHECK(cycles == Approx(oracle).epsilon(1e-14));
  CHECK(cycles / angular == Approx(kTwoPi));
  CHECK(angular == Approx(1.33e-6).epsilon(1e-2));

  // Scaling: 1/C, 1/sin(theta), and tau^-1/2 at zero dead time.
  CHECK(shot_noise_sensitivity(0.04, 3.8_deg, tau, td, 28e9, GammaConvention::cycles) == Approx(cycles / 2));
  const double a = shot_noise_sensitivity(0.02, 54.7_deg, 100_us, 0.0, 28e9, GammaConvention::cycles);
  const double b = shot_noise_sensitivity(0.02, 54.7_deg, 400_us, 0.0, 28e9, GammaConvention::cycles);
  CHECK(a / b == Approx(2.0));

  CHECK_THROWS_AS(shot_noise_sensitivity(0.02, 0.0, tau, td, 28e9, GammaConvention::cycles), NumericalError);
  CHECK_THROWS(shot_noise_sensitivity(0.0, 0.1, tau, td, 28e9, GammaConvention::cycles));
}
