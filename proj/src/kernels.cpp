#include "tiltspdc/kernels.hpp"

#include <cmath>

#include "tiltspdc/units.hpp"

namespace tiltspdc::kernels {

namespace {

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

std::complex<double> jsa_cell(const JsaProblem& p, std::size_t a, std::size_t b) {
  const double ws = p.signal_detuning[a];
  const double wi = p.idler_detuning[b];
  const double wp = ws + wi;
  const double kzp = p.pump.relative_kz(wp);
  const double dk = p.mismatch0 + kzp - p.signal_kz[a] - p.idler_kz[b];
  const double magnitude = p.pump.envelope(wp) * sinc(0.5 * dk * p.length) *
                           p.signal_filter[a] * p.idler_filter[b];
  if (!p.include_phase) return {magnitude, 0.0};
  const double phase = 0.5 * p.length * (kzp + p.signal_kz[a] + p.idler_kz[b]);
  return std::polar(magnitude, phase);
}

double rate_at(std::span<const std::complex<double>> s0, double omega_first, double spacing,
               double tau) {
  double re = 0.0;
  for (std::size_t k = 0; k < s0.size(); ++k) {
    const double arg = -(omega_first + static_cast<double>(k) * spacing) * tau;
    re += s0[k].real() * std::cos(arg) - s0[k].imag() * std::sin(arg);
  }
  return 0.5 * (1.0 - re * spacing);
}

}  // namespace

double PumpModel::relative_kz(double detuning) const {
  const double omega = omega0 + detuning;
  const double lambda = 2.0 * kPi * kSpeedOfLight / omega;
  const double x = lambda * lambda;
  const double inv_n2 = cos2_theta / ordinary.index_squared(x) +
                        sin2_theta / extraordinary.index_squared(x);
  const double k = omega / (kSpeedOfLight * std::sqrt(inv_n2));
  const double kappa = detuning * tilt;
  return (k - k0) - tan_rho * kappa - kappa * kappa / (2.0 * k0);
}

double PumpModel::envelope(double detuning) const {
  double e = std::exp(-spectral_rate * detuning * detuning);
  if (waist > 0.0) {
    const double kappa = detuning * tilt;
    e *= std::exp(-0.25 * kappa * kappa * waist * waist);
  }
  return e;
}

void fill_jsa(const JsaProblem& problem, std::span<std::complex<double>> out,
              ExecutionPolicy policy) {
  const std::size_t rows = problem.signal_detuning.size();
  const std::size_t cols = problem.idler_detuning.size();
  if (policy == ExecutionPolicy::kSerial) {
    for (std::size_t a = 0; a < rows; ++a) {
      for (std::size_t b = 0; b < cols; ++b) out[a * cols + b] = jsa_cell(problem, a, b);
    }
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t a = 0; a < static_cast<std::ptrdiff_t>(rows); ++a) {
    for (std::size_t b = 0; b < cols; ++b) {
      out[a * cols + b] = jsa_cell(problem, static_cast<std::size_t>(a), b);
    }
  }
}

void coincidence_rates(std::span<const std::complex<double>> s0, double omega_first,
                       double spacing, std::span<const double> delays, std::span<double> rate,
                       ExecutionPolicy policy) {
  if (policy == ExecutionPolicy::kSerial) {
    for (std::size_t m = 0; m < delays.size(); ++m) {
      rate[m] = rate_at(s0, omega_first, spacing, delays[m]);
    }
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < static_cast<std::ptrdiff_t>(delays.size()); ++m) {
    rate[m] = rate_at(s0, omega_first, spacing, delays[m]);
  }
}

}  // namespace tiltspdc::kernels
