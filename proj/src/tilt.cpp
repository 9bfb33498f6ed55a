#include "tiltspdc/tilt.hpp"

#include <cmath>
#include <sstream>

#include "tiltspdc/errors.hpp"
#include "tiltspdc/units.hpp"

namespace tiltspdc {

double GratingSpec::groove_spacing() const { return 1000.0 / groove_density; }

void GratingSpec::validate() const {
  if (!(groove_density > 0.0)) throw ValidationError("grating groove density must be > 0");
  if (!(std::abs(theta0) < 0.5 * kPi)) {
    throw ValidationError("grating incidence angle must lie in (-90, 90) deg");
  }
}

double diffraction_angle(const GratingSpec& grating, double lambda_um) {
  grating.validate();
  const double s = grating.order * lambda_um / grating.groove_spacing() - std::sin(grating.theta0);
  if (std::abs(s) > 1.0) {
    std::ostringstream msg;
    msg << "diffraction order " << grating.order << " is evanescent (sin(beta0) = " << s << ")";
    throw PhysicsError(msg.str());
  }
  return std::asin(s);
}

namespace {

double resolved_beta0(const GratingSpec& grating, double lambda_um) {
  return grating.beta0 ? *grating.beta0 : diffraction_angle(grating, lambda_um);
}

}  // namespace

double angular_dispersion(const GratingSpec& grating, double lambda_um) {
  grating.validate();
  const double beta0 = resolved_beta0(grating, lambda_um);
  const double cb = std::cos(beta0);
  if (std::abs(cb) < 1e-12) throw PhysicsError("grazing diffraction angle: cos(beta0) = 0");
  return grating.order / (grating.groove_spacing() * cb);
}

PulseFrontTilt tilt_from_grating(const GratingSpec& grating, double lambda_p) {
  const double beta0 = resolved_beta0(grating, lambda_p);
  const double eps = angular_dispersion(grating, lambda_p);
  return {std::atan(-lambda_p * eps), -std::cos(grating.theta0) / std::cos(beta0)};
}

GratingSpec design_grating(double phi, double groove_density, int order, double lambda_p) {
  GratingSpec g{groove_density, order, 0.0, std::nullopt};
  g.validate();
  const double t = std::tan(phi);
  if (order == 0 || t == 0.0) {
    if (order == 0 && t == 0.0) return g;
    throw PhysicsError("zero tilt needs order 0 and a nonzero order needs nonzero tilt");
  }
  const double cos_beta = -lambda_p * order / (g.groove_spacing() * t);
  if (!(cos_beta > 0.0 && cos_beta <= 1.0)) {
    std::ostringstream msg;
    msg << "no diffraction angle gives phi = " << rad_to_deg(phi) << " deg with "
        << groove_density << " lines/mm, order " << order;
    throw PhysicsError(msg.str());
  }
  const double m_lambda_d = order * lambda_p / g.groove_spacing();
  // Both signs of beta0 share cos(beta0); keep the one with a real incidence
  // angle, preferring the smaller |theta0|.
  std::optional<GratingSpec> best;
  for (double sign : {1.0, -1.0}) {
    const double beta = sign * std::acos(cos_beta);
    const double s = m_lambda_d - std::sin(beta);
    if (std::abs(s) > 1.0 || std::abs(std::abs(s) - 1.0) < 1e-15) continue;
    GratingSpec cand{groove_density, order, std::asin(s), beta};
    if (!best || std::abs(cand.theta0) < std::abs(best->theta0)) best = cand;
  }
  if (!best) throw PhysicsError("required incidence angle is not physical");
  return *best;
}

GratingSpec littrow_grating(double groove_density, int order, double lambda_um) {
  GratingSpec g{groove_density, order, 0.0, std::nullopt};
  g.validate();
  const double s = 0.5 * order * lambda_um / g.groove_spacing();
  if (std::abs(s) >= 1.0) throw PhysicsError("Littrow mount impossible for this order");
  g.theta0 = std::asin(s);
  g.beta0 = g.theta0;
  return g;
}

void TiltedPumpConfig::validate() const {
  if (!(lambda_p > 0.0)) throw ValidationError("pump wavelength must be > 0");
  if (bandwidth_fwhm && !(*bandwidth_fwhm > 0.0)) {
    throw ValidationError("pump bandwidth must be > 0 (or CW)");
  }
  if (!(waist > 0.0)) throw ValidationError("pump waist must be > 0");
  if (!(std::abs(phi) < 0.5 * kPi)) throw ValidationError("tilt angle must lie in (-90, 90) deg");
}

EffectiveWave effective_wave(const WaveParameters& base, double phi) {
  if (!(std::abs(phi) < 0.5 * kPi)) throw ValidationError("tilt angle must lie in (-90, 90) deg");
  const double t = std::tan(phi) / kSpeedOfLight;
  return {base, base.N - std::tan(base.rho) * t, base.D - t * t / base.k};
}

double solve_tilt_anticorrelation(const WaveParameters& signal, const WaveParameters& idler) {
  const double dn = signal.N - idler.N;
  if (dn == 0.0) return 0.0;
  const double dr = std::tan(signal.rho) - std::tan(idler.rho);
  if (dr == 0.0) {
    throw PhysicsError(
        "no tilt can equalize group velocities: signal and idler have equal walk-off "
        "but different inverse group velocities");
  }
  const double phi = std::atan(kSpeedOfLight * dn / dr);
  const double residual = effective_wave(signal, phi).u - effective_wave(idler, phi).u;
  if (!(std::abs(residual) < kTiltResidualTolerance)) {
    throw NumericalGuardError("anticorrelation tilt residual above tolerance");
  }
  return phi;
}

double solve_tilt_correlation(const WaveParameters& pump, const WaveParameters& signal,
                              const WaveParameters& idler) {
  const double num = 2.0 * pump.N - signal.N - idler.N;
  if (num == 0.0) return 0.0;
  const double den = 2.0 * std::tan(pump.rho) - std::tan(signal.rho) - std::tan(idler.rho);
  if (den == 0.0) {
    throw PhysicsError(
        "no tilt can achieve correlation condition: walk-off combination "
        "2 tan(rho_p) - tan(rho_s) - tan(rho_i) vanishes");
  }
  const double phi = std::atan(kSpeedOfLight * num / den);
  const double residual = d_plus(effective_wave(pump, phi), effective_wave(signal, phi),
                                 effective_wave(idler, phi));
  if (!(std::abs(residual) < kTiltResidualTolerance)) {
    throw NumericalGuardError("correlation tilt residual above tolerance");
  }
  return phi;
}

double d_plus(const EffectiveWave& pump, const EffectiveWave& signal, const EffectiveWave& idler) {
  return pump.u - 0.5 * (signal.u + idler.u);
}

}  // namespace tiltspdc
