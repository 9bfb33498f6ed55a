#pragma once

// Internal unit system: lengths in micrometers, time in femtoseconds,
// angular frequency in rad/fs.

#include <numbers>

namespace tiltspdc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 0.299792458;  // um/fs

inline double omega_from_wavelength(double lambda_um) {
  return 2.0 * kPi * kSpeedOfLight / lambda_um;
}

inline double wavelength_from_omega(double omega) {
  return 2.0 * kPi * kSpeedOfLight / omega;
}

// Converts a wavelength FWHM around lambda into an angular-frequency FWHM.
inline double omega_width_from_wavelength_width(double fwhm_um, double lambda_um) {
  return 2.0 * kPi * kSpeedOfLight * fwhm_um / (lambda_um * lambda_um);
}

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace tiltspdc
