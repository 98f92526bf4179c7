#pragma once

#include <numbers>

// Everything in the library is SI: tesla, seconds, hertz, radians.
// Gyromagnetic ratios are frequency-per-tesla (cycles), so a phase is
// always 2*pi*gamma*B*t.
namespace spinrot {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

namespace constants {
inline constexpr double kZeroFieldSplitting = 2.87e9;  // Hz
inline constexpr double kGammaElectron = 28e9;         // Hz/T
inline constexpr double kGammaC13 = 10.7e6;            // Hz/T
inline constexpr double kHyperfineN14 = 2.16e6;        // Hz
/// Transverse field above which the linear Zeeman model is flagged.
inline constexpr double kLinearTransverseBound = 0.5e-3;  // T
}  // namespace constants

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

namespace literals {
constexpr double operator""_T(long double v) { return static_cast<double>(v) * 1; }
constexpr double operator""_T(unsigned long long v) { return static_cast<double>(v) * 1; }
constexpr double operator""_mT(long double v) { return static_cast<double>(v) * 1e-3; }
constexpr double operator""_mT(unsigned long long v) { return static_cast<double>(v) * 1e-3; }
constexpr double operator""_uT(long double v) { return static_cast<double>(v) * 1e-6; }
constexpr double operator""_uT(unsigned long long v) { return static_cast<double>(v) * 1e-6; }
constexpr double operator""_s(long double v) { return static_cast<double>(v) * 1; }
constexpr double operator""_s(unsigned long long v) { return static_cast<double>(v) * 1; }
constexpr double operator""_ms(long double v) { return static_cast<double>(v) * 1e-3; }
constexpr double operator""_ms(unsigned long long v) { return static_cast<double>(v) * 1e-3; }
constexpr double operator""_us(long double v) { return static_cast<double>(v) * 1e-6; }
constexpr double operator""_us(unsigned long long v) { return static_cast<double>(v) * 1e-6; }
constexpr double operator""_Hz(long double v) { return static_cast<double>(v) * 1; }
constexpr double operator""_Hz(unsigned long long v) { return static_cast<double>(v) * 1; }
constexpr double operator""_kHz(long double v) { return static_cast<double>(v) * 1e3; }
constexpr double operator""_kHz(unsigned long long v) { return static_cast<double>(v) * 1e3; }
constexpr double operator""_MHz(long double v) { return static_cast<double>(v) * 1e6; }
constexpr double operator""_MHz(unsigned long long v) { return static_cast<double>(v) * 1e6; }
constexpr double operator""_GHz(long double v) { return static_cast<double>(v) * 1e9; }
constexpr double operator""_GHz(unsigned long long v) { return static_cast<double>(v) * 1e9; }
constexpr double operator""_deg(long double v) { return deg_to_rad(static_cast<double>(v)); }
constexpr double operator""_deg(unsigned long long v) { return deg_to_rad(static_cast<double>(v)); }
}  // namespace literals

}  // namespace spinrot
