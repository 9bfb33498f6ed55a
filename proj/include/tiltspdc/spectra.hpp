#pragma once

#include <complex>
#include <span>
#include <vector>

#include "tiltspdc/biphoton.hpp"

namespace tiltspdc {

struct Curve {
  std::vector<double> x;
  std::vector<double> y;

  double spacing() const { return x.size() > 1 ? x[1] - x[0] : 0.0; }
};

struct ComplexCurve {
  std::vector<double> x;
  std::vector<std::complex<double>> y;
};

// Full width at half maximum around the global maximum, linearly interpolated.
double fwhm(const Curve& curve);
// Rectangle-rule integral on the uniform sample spacing.
double integral(const Curve& curve);

// S(Omega_s) = sum_i |Psi|^2 dOmega_i.
Curve marginal_signal(const JointSpectrum& js);
Curve marginal_idler(const JointSpectrum& js);

// S+(Omega+) and S-(Omega-), each with unit integral. Requires equal sample
// spacing on both axes.
struct DiagonalSpectra {
  Curve sum;
  Curve difference;
};
DiagonalSpectra diagonal_spectra(const JointSpectrum& js);

// Pearson coefficient of |Psi|^2 as a density over (Omega_s, Omega_i).
double pearson_correlation(const JointSpectrum& js);

// K = 1 / sum p_j^2 with p_j the normalized squared singular values.
double schmidt_number(const JointSpectrum& js);

// Closed-form CW signal spectra, peak-normalized:
//   phi = 0:                 sinc^2[(N_s - N_i) Omega L / 2]
//   anticorrelation tilt:    sinc^2[(g_s + g_i) Omega^2 L / 4]
// Any other phi throws ValidationError (use build_jsa instead).
Curve cw_signal_spectrum_analytic(const WaveParameters& signal, const WaveParameters& idler,
                                  double length, double phi, std::span<const double> detunings);

enum class CwBranch { kUntilted, kAnticorrelation, kNone };
CwBranch cw_branch(const WaveParameters& signal, const WaveParameters& idler, double phi);

}  // namespace tiltspdc
