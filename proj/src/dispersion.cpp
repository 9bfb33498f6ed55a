#include "tiltspdc/dispersion.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "tiltspdc/errors.hpp"
#include "tiltspdc/units.hpp"

namespace tiltspdc {

Jet wavenumber_jet(const CrystalModel& crystal, const PropagationGeometry& geom, double omega) {
  geom.validate();
  crystal.check_range(wavelength_from_omega(omega));
  const Jet w = Jet::variable(omega);
  const double two_pi_c = 2.0 * kPi * kSpeedOfLight;
  const Jet x = two_pi_c * two_pi_c * reciprocal(w * w);  // lambda^2
  const Jet no2 = crystal.ordinary.index_squared(x);
  Jet n2 = no2;
  if (geom.polarization == Polarization::kExtraordinary) {
    const Jet ne2 = crystal.extraordinary.index_squared(x);
    const double c = std::cos(geom.theta);
    const double s = std::sin(geom.theta);
    n2 = reciprocal(c * c * reciprocal(no2) + s * s * reciprocal(ne2));
  }
  return w * sqrt(n2) / kSpeedOfLight;
}

double wavenumber(const CrystalModel& crystal, const PropagationGeometry& geom, double omega) {
  return omega * index_at_angle(crystal, geom, wavelength_from_omega(omega)) / kSpeedOfLight;
}

double walkoff_angle(const CrystalModel& crystal, const PropagationGeometry& geom,
                     double lambda_um) {
  const double n = index_at_angle(crystal, geom, lambda_um);
  if (geom.polarization == Polarization::kOrdinary) return 0.0;
  const double no = refractive_index(crystal, Axis::kOrdinary, lambda_um);
  const double ne = refractive_index(crystal, Axis::kExtraordinary, lambda_um);
  const double tan_rho =
      0.5 * n * n * (1.0 / (ne * ne) - 1.0 / (no * no)) * std::sin(2.0 * geom.theta);
  return std::atan(tan_rho);
}

WaveParameters wave_parameters(const CrystalModel& crystal, const PropagationGeometry& geom,
                               double lambda0_um) {
  WaveParameters w;
  w.lambda0 = lambda0_um;
  w.omega0 = omega_from_wavelength(lambda0_um);
  const Jet k = wavenumber_jet(crystal, geom, w.omega0);
  w.k = k.v;
  w.N = k.d1;
  w.D = k.d2;
  w.n = k.v * kSpeedOfLight / w.omega0;
  w.rho = walkoff_angle(crystal, geom, lambda0_um);
  return w;
}

double type2_mismatch(const CrystalModel& crystal, double lambda_p, double theta) {
  const double wp = omega_from_wavelength(lambda_p);
  const double ws = 0.5 * wp;
  const PropagationGeometry e{theta, Polarization::kExtraordinary};
  const PropagationGeometry o{theta, Polarization::kOrdinary};
  return wavenumber(crystal, e, wp) - wavenumber(crystal, o, ws) - wavenumber(crystal, e, ws);
}

double phase_matching_angle(const CrystalModel& crystal, double lambda_p) {
  crystal.check_range(lambda_p);
  crystal.check_range(2.0 * lambda_p);
  const auto mismatch = [&](double theta) { return type2_mismatch(crystal, lambda_p, theta); };

  // Coarse bracket first; the mismatch is monotone for ordinary crystals but
  // nothing here relies on that.
  constexpr int kScan = 900;
  const double step = 0.5 * kPi / kScan;
  double lo = 0.0;
  double f_lo = mismatch(lo);
  bool found = f_lo == 0.0;
  double hi = lo;
  for (int j = 1; j <= kScan && !found; ++j) {
    hi = j * step;
    const double f_hi = mismatch(hi);
    if (f_hi == 0.0) return hi;
    if ((f_lo < 0.0) != (f_hi < 0.0)) {
      found = true;
      break;
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (f_lo == 0.0) return lo;
  if (!found) {
    std::ostringstream msg;
    msg << "phase matching unattainable: type-II mismatch in " << crystal.name
        << " has no sign change on (0, 90) deg for pump " << lambda_p << " um";
    throw PhysicsError(msg.str());
  }

  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      mismatch, lo, hi, boost::math::tools::eps_tolerance<double>(52), max_iter);
  const double theta = std::abs(mismatch(a)) <= std::abs(mismatch(b)) ? a : b;
  if (!(std::abs(mismatch(theta)) < kPhaseMatchingTolerance)) {
    throw NumericalGuardError("phase-matching root did not converge below tolerance");
  }
  return theta;
}

Type2Waves type2_waves(const CrystalModel& crystal, double lambda_p, double theta) {
  Type2Waves w;
  w.theta = theta;
  w.pump = wave_parameters(crystal, {theta, Polarization::kExtraordinary}, lambda_p);
  w.signal = wave_parameters(crystal, {theta, Polarization::kOrdinary}, 2.0 * lambda_p);
  w.idler = wave_parameters(crystal, {theta, Polarization::kExtraordinary}, 2.0 * lambda_p);
  return w;
}

}  // namespace tiltspdc
