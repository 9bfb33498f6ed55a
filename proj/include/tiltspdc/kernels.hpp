#pragma once

// Data-parallel inner loops. Every kernel has a serial reference path and an
// OpenMP path; both compute each output element with the same arithmetic, so
// results are bit-identical regardless of thread count.

#include <complex>
#include <span>

#include "tiltspdc/crystal.hpp"

namespace tiltspdc {

enum class ExecutionPolicy { kSerial, kParallel };

namespace kernels {

// Tilted pump: longitudinal wavenumber and spectral envelope as functions of
// the pump detuning Omega+ = Omega_s + Omega_i.
struct PumpModel {
  SellmeierSet ordinary;
  SellmeierSet extraordinary;
  double cos2_theta = 1.0;
  double sin2_theta = 0.0;
  double omega0 = 0.0;
  double k0 = 0.0;
  double tan_rho = 0.0;
  double tilt = 0.0;          // tan(phi)/c, fs/um
  double spectral_rate = 0.0; // amplitude exp(-spectral_rate * Omega^2)
  double waist = 0.0;         // 0 disables the transverse envelope

  // k_z(Omega, kappa) - k0 with kappa = Omega * tilt. No range checks: callers
  // validate the detuning extremes first.
  double relative_kz(double detuning) const;
  double envelope(double detuning) const;
};

struct JsaProblem {
  PumpModel pump;
  std::span<const double> signal_detuning;
  std::span<const double> idler_detuning;
  std::span<const double> signal_kz;  // k_z - k0 per row
  std::span<const double> idler_kz;   // k_z - k0 per column
  std::span<const double> signal_filter;
  std::span<const double> idler_filter;
  double mismatch0 = 0.0;  // k_p0 - k_s0 - k_i0
  double length = 0.0;     // um
  bool include_phase = true;
};

// Row-major (signal index major) amplitude, unnormalized.
void fill_jsa(const JsaProblem& problem, std::span<std::complex<double>> out,
              ExecutionPolicy policy);

// rate[m] = (1 - Re sum_k s0[k] exp(-i Omega_k tau_m) dOmega) / 2, with
// Omega_k = omega_first + k * spacing.
void coincidence_rates(std::span<const std::complex<double>> s0, double omega_first,
                       double spacing, std::span<const double> delays, std::span<double> rate,
                       ExecutionPolicy policy);

}  // namespace kernels
}  // namespace tiltspdc
