#pragma once

#include <complex>
#include <span>
#include <vector>

#include "tiltspdc/spectra.hpp"

namespace tiltspdc {

struct HomTrace {
  std::vector<double> delays;  // fs
  std::vector<double> rate;    // normalized coincidence rate, 1/2 far from the dip
  double visibility = 0.0;
  double dip_center = 0.0;  // fs
};

inline constexpr double kEdgeTolerance = 0.02;
inline constexpr std::size_t kDefaultDelayPoints = 4001;
// Second difference at the minimum larger than this multiple of the second
// differences two samples away marks a kink (triangular dip).
inline constexpr double kKinkRatio = 4.0;

// S0(Omega-) = sum over Omega+ of Psi(Omega+, Omega-) Psi*(Omega+, -Omega-), per
// unit Omega-, so that sum S0 dOmega- is the exchange overlap. Throws
// ValidationError on a grid without exchange symmetry.
ComplexCurve s_zero(const JointSpectrum& js);

// sum Psi(s,i) Psi*(i,s) exp(-i (Omega_s - Omega_i) tau) dOmega_s dOmega_i.
std::complex<double> exchange_overlap(const JointSpectrum& js, double delay);

struct DelayWindow {
  double min = 0.0;
  double max = 0.0;
  std::size_t points = kDefaultDelayPoints;
};

// Centered on the first-order dip position, half-width 4 * 2pi / FWHM(S-).
DelayWindow default_delay_window(const JointSpectrum& js);

// R(tau) = (1 - Re sum S0 exp(-i Omega- tau) dOmega-) / 2 by direct quadrature.
std::vector<double> rates_from_s_zero(const ComplexCurve& s0, std::span<const double> delays,
                                      ExecutionPolicy policy = ExecutionPolicy::kParallel);

// Throws NumericalGuardError when the rate at either window edge is more than
// kEdgeTolerance away from 1/2.
HomTrace coincidence_trace(const JointSpectrum& js, const DelayWindow& window,
                           ExecutionPolicy policy = ExecutionPolicy::kParallel);
HomTrace coincidence_trace(const JointSpectrum& js,
                           ExecutionPolicy policy = ExecutionPolicy::kParallel);

// Same integral through a zero-padded FFT of S0; delays are the FFT-native
// samples 2 pi m / (fft_size dOmega), m in [-fft_size/2, fft_size/2).
HomTrace coincidence_trace_fft(const JointSpectrum& js, std::size_t fft_size);

double visibility(std::span<const double> rate);
double visibility(const HomTrace& trace);
double dip_center(std::span<const double> delays, std::span<const double> rate);

struct TriangleFit {
  double apex = 0.0;          // intersection of the two fitted lines, fs
  double left_slope = 0.0;
  double right_slope = 0.0;
  double rms_residual = 0.0;  // relative to dip depth
  double depth = 0.0;
  bool triangular = false;
};

inline constexpr double kTriangleThreshold = 0.45;
inline constexpr double kTriangleResidual = 0.02;

// Two-sided linear fit over the samples with R < threshold.
TriangleFit fit_triangular_dip(const HomTrace& trace, double threshold = kTriangleThreshold);

}  // namespace tiltspdc
