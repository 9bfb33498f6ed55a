#pragma once

#include <limits>
#include <optional>

#include "tiltspdc/dispersion.hpp"

namespace tiltspdc {

// Diffraction grating used to impose angular dispersion on the pump.
struct GratingSpec {
  double groove_density = 0.0;  // lines per mm
  int order = 0;
  double theta0 = 0.0;              // incidence angle, rad
  std::optional<double> beta0;      // diffraction angle, rad; derived when empty

  double groove_spacing() const;  // um
  void validate() const;
};

// Grating equation sin(theta0) + sin(beta0) = m lambda / d.
// Throws PhysicsError for an evanescent order.
double diffraction_angle(const GratingSpec& grating, double lambda_um);

// epsilon = m / (d cos(beta0)) in rad/um of wavelength; the sign follows m.
double angular_dispersion(const GratingSpec& grating, double lambda_um);

struct PulseFrontTilt {
  double phi = 0.0;    // tan(phi) = -lambda_p * epsilon
  double alpha = 1.0;  // -cos(theta0)/cos(beta0)
};

PulseFrontTilt tilt_from_grating(const GratingSpec& grating, double lambda_p);

// Inverse of tilt_from_grating for a given groove density and order: solves for
// the incidence angle. The order sign has to be opposite to the sign of phi.
GratingSpec design_grating(double phi, double groove_density, int order, double lambda_p);

// Littrow mount, theta0 = beta0.
GratingSpec littrow_grating(double groove_density, int order, double lambda_um);

struct TiltedPumpConfig {
  double lambda_p = 0.405;                // um
  std::optional<double> bandwidth_fwhm;  // um; empty means CW
  double waist = std::numeric_limits<double>::infinity();  // 1/e^2 intensity radius, um
  double phi = 0.0;
  double alpha = 1.0;

  bool is_cw() const { return !bandwidth_fwhm.has_value(); }
  void validate() const;
};

struct EffectiveWave {
  WaveParameters base;
  double u = 0.0;  // fs/um
  double g = 0.0;  // fs^2/um
};

// u = N - tan(rho) tan(phi)/c,  g = D - (tan(phi)/c)^2 / k.
EffectiveWave effective_wave(const WaveParameters& base, double phi);

inline constexpr double kTiltResidualTolerance = 1e-9;  // fs/um

// Tilt making u_s = u_i. Throws PhysicsError when tan(rho_s) = tan(rho_i)
// but N_s != N_i.
double solve_tilt_anticorrelation(const WaveParameters& signal, const WaveParameters& idler);

// Tilt making u_p = (u_s + u_i)/2.
double solve_tilt_correlation(const WaveParameters& pump, const WaveParameters& signal,
                              const WaveParameters& idler);

// D+ = u_p - (u_s + u_i)/2.
double d_plus(const EffectiveWave& pump, const EffectiveWave& signal, const EffectiveWave& idler);

}  // namespace tiltspdc
