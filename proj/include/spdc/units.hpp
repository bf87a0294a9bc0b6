#pragma once

#include <numbers>

// Canonical internal units: wavelength in um, temperature in degC, angular
// frequency in rad/s. The CLI converts nm at the boundary.
namespace spdc::units {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;             // m/s, exact
inline constexpr double kSpeedOfLightUm = kSpeedOfLight * 1e6;   // um/s

constexpr double nm_to_um(double nm) { return nm * 1e-3; }
constexpr double um_to_nm(double um) { return um * 1e3; }
constexpr double fs_to_s(double fs) { return fs * 1e-15; }
constexpr double s_to_fs(double s) { return s * 1e15; }

// omega = 2 pi c / lambda
constexpr double omega_from_um(double lambda_um) { return kTwoPi * kSpeedOfLightUm / lambda_um; }
constexpr double um_from_omega(double omega) { return kTwoPi * kSpeedOfLightUm / omega; }
constexpr double omega_from_nm(double lambda_nm) { return omega_from_um(nm_to_um(lambda_nm)); }
constexpr double nm_from_omega(double omega) { return um_to_nm(um_from_omega(omega)); }

}  // namespace spdc::units
