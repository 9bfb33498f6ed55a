#include "tiltspdc/hom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <fftw3.h>

#include "tiltspdc/errors.hpp"
#include "tiltspdc/units.hpp"

namespace tiltspdc {

namespace {

void require_exchange_grid(const JointSpectrum& js) {
  if (!js.normalized) throw ValidationError("joint spectrum must be normalized");
  if (!js.grid.exchange_symmetric()) {
    throw ValidationError("asymmetric grid: signal and idler axes must share their sampling");
  }
}

void finish_trace(HomTrace& trace) {
  trace.visibility = visibility(trace.rate);
  trace.dip_center = dip_center(trace.delays, trace.rate);
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    sx += x[j];
    sy += y[j];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    sxx += (x[j] - mx) * (x[j] - mx);
    sxy += (x[j] - mx) * (y[j] - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace

ComplexCurve s_zero(const JointSpectrum& js) {
  require_exchange_grid(js);
  const std::size_t n = js.rows();
  const double h = js.grid.signal.spacing();
  ComplexCurve out;
  out.x.resize(2 * n - 1);
  out.y.assign(2 * n - 1, {0.0, 0.0});
  for (std::size_t k = 0; k < out.x.size(); ++k) {
    out.x[k] = (static_cast<double>(k) - static_cast<double>(n - 1)) * h;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      out.y[a + (n - 1) - b] += js.at(a, b) * std::conj(js.at(b, a));
    }
  }
  for (auto& v : out.y) v *= h;
  return out;
}

std::complex<double> exchange_overlap(const JointSpectrum& js, double delay) {
  const ComplexCurve s0 = s_zero(js);
  const double h = js.grid.signal.spacing();
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t k = 0; k < s0.x.size(); ++k) sum += s0.y[k] * std::polar(1.0, -s0.x[k] * delay);
  return sum * h;
}

DelayWindow default_delay_window(const JointSpectrum& js) {
  const double width = fwhm(diagonal_spectra(js).difference);
  const double center = js.context.length > 0.0 ? js.context.predicted_dip_center() : 0.0;
  const double half = std::max(4.0 * 2.0 * kPi / width, 1.5 * std::abs(center));
  return {center - half, center + half, kDefaultDelayPoints};
}

std::vector<double> rates_from_s_zero(const ComplexCurve& s0, std::span<const double> delays,
                                      ExecutionPolicy policy) {
  if (s0.x.size() < 2) throw ValidationError("S0 needs at least two samples");
  std::vector<double> rate(delays.size());
  kernels::coincidence_rates(s0.y, s0.x.front(), s0.x[1] - s0.x[0], delays, rate, policy);
  return rate;
}

HomTrace coincidence_trace(const JointSpectrum& js, const DelayWindow& window,
                           ExecutionPolicy policy) {
  if (window.points < 2 || !(window.max > window.min)) {
    throw ValidationError("delay window needs max > min and at least two points");
  }
  HomTrace trace;
  trace.delays.resize(window.points);
  for (std::size_t m = 0; m < window.points; ++m) {
    trace.delays[m] = window.min + (window.max - window.min) * static_cast<double>(m) /
                                       static_cast<double>(window.points - 1);
  }
  trace.rate = rates_from_s_zero(s_zero(js), trace.delays, policy);
  for (double edge : {trace.rate.front(), trace.rate.back()}) {
    if (std::abs(edge - 0.5) > kEdgeTolerance) {
      std::ostringstream msg;
      msg << "delay window [" << window.min << ", " << window.max
          << "] fs too narrow: edge rate " << edge << " is not within " << kEdgeTolerance
          << " of 1/2";
      throw NumericalGuardError(msg.str());
    }
  }
  finish_trace(trace);
  return trace;
}

HomTrace coincidence_trace(const JointSpectrum& js, ExecutionPolicy policy) {
  return coincidence_trace(js, default_delay_window(js), policy);
}

HomTrace coincidence_trace_fft(const JointSpectrum& js, std::size_t fft_size) {
  const ComplexCurve s0 = s_zero(js);
  const std::size_t n_bins = s0.x.size();
  if (fft_size < n_bins || fft_size % 2 != 0) {
    throw ValidationError("FFT size must be even and cover all S0 samples");
  }
  const double h = js.grid.signal.spacing();
  const std::size_t offset = (n_bins - 1) / 2;  // index of Omega- = 0

  auto* buffer = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * fft_size));
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(fft_size), buffer, buffer, FFTW_FORWARD,
                                    FFTW_ESTIMATE);
  for (std::size_t k = 0; k < fft_size; ++k) {
    const std::complex<double> v = k < n_bins ? s0.y[k] : std::complex<double>{};
    buffer[k][0] = v.real();
    buffer[k][1] = v.imag();
  }
  fftw_execute(plan);

  HomTrace trace;
  trace.delays.resize(fft_size);
  trace.rate.resize(fft_size);
  const auto size = static_cast<std::ptrdiff_t>(fft_size);
  for (std::ptrdiff_t j = 0; j < size; ++j) {
    const std::ptrdiff_t m = j - size / 2;
    const std::size_t bin = static_cast<std::size_t>((m + size) % size);
    const double tau = 2.0 * kPi * static_cast<double>(m) / (static_cast<double>(fft_size) * h);
    // Shift the transform origin from Omega_0 to Omega- = 0.
    const double shift = 2.0 * kPi * static_cast<double>(m) * static_cast<double>(offset) /
                         static_cast<double>(fft_size);
    const std::complex<double> x{buffer[bin][0], buffer[bin][1]};
    const std::complex<double> overlap = h * std::polar(1.0, shift) * x;
    trace.delays[j] = tau;
    trace.rate[j] = 0.5 * (1.0 - overlap.real());
  }
  fftw_destroy_plan(plan);
  fftw_free(buffer);
  finish_trace(trace);
  return trace;
}

double visibility(std::span<const double> rate) {
  if (rate.empty()) throw ValidationError("empty trace");
  const auto [lo, hi] = std::minmax_element(rate.begin(), rate.end());
  const double sum = *hi + *lo;
  return sum > 0.0 ? (*hi - *lo) / sum : 0.0;
}

double visibility(const HomTrace& trace) { return visibility(trace.rate); }

double dip_center(std::span<const double> delays, std::span<const double> rate) {
  if (rate.size() != delays.size() || rate.empty()) throw ValidationError("bad trace");
  const auto j = static_cast<std::size_t>(std::min_element(rate.begin(), rate.end()) - rate.begin());
  if (j < 4 || j + 4 >= rate.size()) return delays[j];
  const auto d2 = [&](std::size_t i) { return rate[i - 1] - 2.0 * rate[i] + rate[i + 1]; };
  const double side = std::max(std::abs(d2(j - 2)), std::abs(d2(j + 2)));
  if (std::abs(d2(j)) > kKinkRatio * side) return delays[j];

  // Least-squares parabola through the five samples around the minimum.
  const double x0 = delays[j];
  Eigen::Matrix<double, 5, 3> a;
  Eigen::Matrix<double, 5, 1> y;
  for (int i = 0; i < 5; ++i) {
    const double x = delays[j - 2 + i] - x0;
    a(i, 0) = x * x;
    a(i, 1) = x;
    a(i, 2) = 1.0;
    y(i) = rate[j - 2 + i];
  }
  const Eigen::Vector3d c = a.colPivHouseholderQr().solve(y);
  if (!(c(0) > 0.0)) return delays[j];
  const double vertex = x0 - c(1) / (2.0 * c(0));
  if (vertex < delays[j - 1] || vertex > delays[j + 1]) return delays[j];
  return vertex;
}

TriangleFit fit_triangular_dip(const HomTrace& trace, double threshold) {
  std::vector<double> lx, ly, rx, ry;
  for (std::size_t m = 0; m < trace.rate.size(); ++m) {
    if (trace.rate[m] >= threshold) continue;
    if (trace.delays[m] < trace.dip_center) {
      lx.push_back(trace.delays[m]);
      ly.push_back(trace.rate[m]);
    } else {
      rx.push_back(trace.delays[m]);
      ry.push_back(trace.rate[m]);
    }
  }
  if (lx.size() < 3 || rx.size() < 3) {
    throw NumericalGuardError("dip region too small for a two-sided linear fit");
  }
  const LineFit left = fit_line(lx, ly);
  const LineFit right = fit_line(rx, ry);
  TriangleFit fit;
  fit.left_slope = left.slope;
  fit.right_slope = right.slope;
  fit.apex = (right.intercept - left.intercept) / (left.slope - right.slope);
  const auto [lo, hi] = std::minmax_element(trace.rate.begin(), trace.rate.end());
  fit.depth = *hi - *lo;
  double ss = 0.0;
  for (std::size_t j = 0; j < lx.size(); ++j) {
    const double r = ly[j] - (left.slope * lx[j] + left.intercept);
    ss += r * r;
  }
  for (std::size_t j = 0; j < rx.size(); ++j) {
    const double r = ry[j] - (right.slope * rx[j] + right.intercept);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / static_cast<double>(lx.size() + rx.size())) / fit.depth;
  fit.triangular = fit.rms_residual < kTriangleResidual && left.slope < 0.0 && right.slope > 0.0;
  return fit;
}

}  // namespace tiltspdc
