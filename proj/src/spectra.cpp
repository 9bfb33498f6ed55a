#include "tiltspdc/spectra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "tiltspdc/errors.hpp"
#include "tiltspdc/units.hpp"

namespace tiltspdc {

namespace {

double half_crossing(const Curve& c, std::size_t peak, int dir) {
  const double half = 0.5 * c.y[peak];
  std::size_t j = peak;
  while (true) {
    if ((dir > 0 && j + 1 >= c.y.size()) || (dir < 0 && j == 0)) {
      throw NumericalGuardError("curve does not drop below half maximum inside the grid");
    }
    const std::size_t next = dir > 0 ? j + 1 : j - 1;
    if (c.y[next] < half) {
      const double t = (c.y[j] - half) / (c.y[j] - c.y[next]);
      return c.x[j] + t * (c.x[next] - c.x[j]);
    }
    j = next;
  }
}

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

void require_normalized(const JointSpectrum& js) {
  if (!js.normalized) throw ValidationError("joint spectrum must be normalized");
}

}  // namespace

double fwhm(const Curve& curve) {
  if (curve.y.size() < 3) throw ValidationError("curve too short for a FWHM");
  const auto peak = static_cast<std::size_t>(
      std::max_element(curve.y.begin(), curve.y.end()) - curve.y.begin());
  return half_crossing(curve, peak, +1) - half_crossing(curve, peak, -1);
}

double integral(const Curve& curve) {
  double sum = 0.0;
  for (double v : curve.y) sum += v;
  return sum * curve.spacing();
}

Curve marginal_signal(const JointSpectrum& js) {
  require_normalized(js);
  Curve c{js.grid.signal.detunings(), std::vector<double>(js.rows(), 0.0)};
  const double h = js.grid.idler.spacing();
  for (std::size_t a = 0; a < js.rows(); ++a) {
    double sum = 0.0;
    for (std::size_t b = 0; b < js.cols(); ++b) sum += std::norm(js.at(a, b));
    c.y[a] = sum * h;
  }
  return c;
}

Curve marginal_idler(const JointSpectrum& js) {
  require_normalized(js);
  Curve c{js.grid.idler.detunings(), std::vector<double>(js.cols(), 0.0)};
  const double h = js.grid.signal.spacing();
  for (std::size_t a = 0; a < js.rows(); ++a) {
    for (std::size_t b = 0; b < js.cols(); ++b) c.y[b] += std::norm(js.at(a, b));
  }
  for (double& v : c.y) v *= h;
  return c;
}

DiagonalSpectra diagonal_spectra(const JointSpectrum& js) {
  require_normalized(js);
  const double hs = js.grid.signal.spacing();
  const double hi = js.grid.idler.spacing();
  if (std::abs(hs - hi) > 1e-12 * hs) {
    throw ValidationError("diagonal spectra need equal sample spacing on both axes");
  }
  const std::size_t ns = js.rows();
  const std::size_t ni = js.cols();
  const std::size_t nbins = ns + ni - 1;
  DiagonalSpectra out;
  out.sum.x.resize(nbins);
  out.difference.x.resize(nbins);
  const double s0 = js.grid.signal.detuning(0);
  const double i0 = js.grid.idler.detuning(0);
  const double i_last = js.grid.idler.detuning(ni - 1);
  for (std::size_t k = 0; k < nbins; ++k) {
    out.sum.x[k] = s0 + i0 + static_cast<double>(k) * hs;
    out.difference.x[k] = s0 - i_last + static_cast<double>(k) * hs;
  }
  out.sum.y.assign(nbins, 0.0);
  out.difference.y.assign(nbins, 0.0);
  for (std::size_t a = 0; a < ns; ++a) {
    for (std::size_t b = 0; b < ni; ++b) {
      const double p = std::norm(js.at(a, b));
      out.sum.y[a + b] += p;
      out.difference.y[a + (ni - 1) - b] += p;
    }
  }
  // dOmega_s dOmega_i / dOmega_{+-} = hs.
  for (double& v : out.sum.y) v *= hs;
  for (double& v : out.difference.y) v *= hs;
  return out;
}

double pearson_correlation(const JointSpectrum& js) {
  require_normalized(js);
  const auto ds = js.grid.signal.detunings();
  const auto di = js.grid.idler.detunings();
  double w = 0.0, ms = 0.0, mi = 0.0;
  for (std::size_t a = 0; a < js.rows(); ++a) {
    for (std::size_t b = 0; b < js.cols(); ++b) {
      const double p = std::norm(js.at(a, b));
      w += p;
      ms += p * ds[a];
      mi += p * di[b];
    }
  }
  ms /= w;
  mi /= w;
  double vs = 0.0, vi = 0.0, cov = 0.0;
  for (std::size_t a = 0; a < js.rows(); ++a) {
    for (std::size_t b = 0; b < js.cols(); ++b) {
      const double p = std::norm(js.at(a, b));
      const double xs = ds[a] - ms;
      const double xi = di[b] - mi;
      vs += p * xs * xs;
      vi += p * xi * xi;
      cov += p * xs * xi;
    }
  }
  if (!(vs > 0.0) || !(vi > 0.0)) {
    throw NumericalGuardError("undefined correlation: joint spectrum has zero variance");
  }
  return std::clamp(cov / std::sqrt(vs * vi), -1.0, 1.0);
}

double schmidt_number(const JointSpectrum& js) {
  require_normalized(js);
  const double scale = std::sqrt(js.grid.signal.spacing() * js.grid.idler.spacing());
  Eigen::MatrixXcd m(js.rows(), js.cols());
  for (std::size_t a = 0; a < js.rows(); ++a) {
    for (std::size_t b = 0; b < js.cols(); ++b) m(a, b) = js.at(a, b) * scale;
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  const Eigen::VectorXd p = svd.singularValues().array().square();
  const double total = p.sum();
  return total * total / p.squaredNorm();
}

CwBranch cw_branch(const WaveParameters& signal, const WaveParameters& idler, double phi) {
  if (std::abs(phi) < 1e-12) return CwBranch::kUntilted;
  const double du = effective_wave(signal, phi).u - effective_wave(idler, phi).u;
  return std::abs(du) < kTiltResidualTolerance ? CwBranch::kAnticorrelation : CwBranch::kNone;
}

Curve cw_signal_spectrum_analytic(const WaveParameters& signal, const WaveParameters& idler,
                                  double length, double phi, std::span<const double> detunings) {
  const CwBranch branch = cw_branch(signal, idler, phi);
  if (branch == CwBranch::kNone) {
    throw ValidationError(
        "no closed-form CW spectrum for this tilt (only phi = 0 and the anticorrelation "
        "tilt); build the joint spectrum numerically instead");
  }
  Curve c{std::vector<double>(detunings.begin(), detunings.end()),
          std::vector<double>(detunings.size())};
  const double gsum = effective_wave(signal, phi).g + effective_wave(idler, phi).g;
  for (std::size_t j = 0; j < c.x.size(); ++j) {
    const double w = c.x[j];
    const double arg = branch == CwBranch::kUntilted ? (signal.N - idler.N) * w * length / 2.0
                                                     : gsum * w * w * length / 4.0;
    const double s = sinc(arg);
    c.y[j] = s * s;
  }
  return c;
}

}  // namespace tiltspdc
