#pragma once

#include "tiltspdc/biphoton.hpp"
#include "tiltspdc/spectra.hpp"

namespace tiltspdc {

// rho = eps |psi><psi| + (1 - eps)/2 (|HV><HV| + |VH><VH|),
// |psi> = (|HV> + e^{i delta} |VH>) / sqrt(2).
struct PolarizationMixModel {
  double epsilon = 1.0;
  double delta = 0.0;

  void validate() const;
};

// (1 + eps^2) / 2
double purity(const PolarizationMixModel& model);

// Tr[rho (P(theta_a) x P(theta_b))] for linear polarizers at theta_a (signal)
// and theta_b (idler), angles from H.
double coincidence_vs_angles(const PolarizationMixModel& model, double theta_a, double theta_b);

// (max - min)/(max + min) over theta_b.
double curve_visibility(const PolarizationMixModel& model, double theta_a);

// Coincidence rate sampled over theta_b in [0, pi).
Curve polarizer_curve(const PolarizationMixModel& model, double theta_a, std::size_t points);

// |sum Psi(s,i) Psi*(i,s) exp(-i (Omega_s - Omega_i) delay)| dOmega^2, clamped
// to [0, 1]. Evaluate at the HOM dip delay to model a compensated delay line.
double epsilon_from_jsa(const JointSpectrum& js, double delay = 0.0);

}  // namespace tiltspdc
