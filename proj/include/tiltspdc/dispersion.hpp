#pragma once

#include "tiltspdc/crystal.hpp"
#include "tiltspdc/jet.hpp"

namespace tiltspdc {

// Per-wave dispersion bundle at a reference frequency and propagation angle.
struct WaveParameters {
  double lambda0 = 0.0;  // vacuum wavelength, um
  double omega0 = 0.0;   // rad/fs
  double n = 0.0;
  double k = 0.0;    // rad/um
  double N = 0.0;    // dk/domega, fs/um
  double D = 0.0;    // d2k/domega2, fs^2/um
  double rho = 0.0;  // Poynting walk-off, rad (0 for ordinary waves)
};

// k(omega) with its first two omega-derivatives.
Jet wavenumber_jet(const CrystalModel& crystal, const PropagationGeometry& geom, double omega);
double wavenumber(const CrystalModel& crystal, const PropagationGeometry& geom, double omega);

// tan(rho) = (n(theta)^2 / 2) (1/n_e^2 - 1/n_o^2) sin(2 theta); zero for o-waves.
double walkoff_angle(const CrystalModel& crystal, const PropagationGeometry& geom,
                     double lambda_um);

WaveParameters wave_parameters(const CrystalModel& crystal, const PropagationGeometry& geom,
                               double lambda0_um);

// Collinear degenerate type-II (oee): pump e at lambda_p, signal o and idler e
// at 2*lambda_p.
double type2_mismatch(const CrystalModel& crystal, double lambda_p, double theta);

// Solves type2_mismatch(theta) = 0 on (0, pi/2). Throws PhysicsError when the
// mismatch has no sign change, NumericalGuardError if the refined root leaves a
// residual above kPhaseMatchingTolerance.
double phase_matching_angle(const CrystalModel& crystal, double lambda_p);

inline constexpr double kPhaseMatchingTolerance = 1e-9;  // rad/um

struct Type2Waves {
  double theta = 0.0;
  WaveParameters pump;
  WaveParameters signal;
  WaveParameters idler;
};

Type2Waves type2_waves(const CrystalModel& crystal, double lambda_p, double theta);

}  // namespace tiltspdc
