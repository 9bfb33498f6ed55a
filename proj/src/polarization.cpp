#include "tiltspdc/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include <boost/math/tools/minima.hpp>

#include "tiltspdc/errors.hpp"
#include "tiltspdc/hom.hpp"
#include "tiltspdc/units.hpp"

namespace tiltspdc {

void PolarizationMixModel::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ValidationError("epsilon must lie in [0, 1]");
  if (!std::isfinite(delta)) throw ValidationError("delta must be finite");
}

double purity(const PolarizationMixModel& model) {
  model.validate();
  return 0.5 * (1.0 + model.epsilon * model.epsilon);
}

double coincidence_vs_angles(const PolarizationMixModel& model, double theta_a, double theta_b) {
  model.validate();
  // <HV|.|HV> and <VH|.|VH> populations carry weight 1/2 each in both the pure
  // and the mixed part; only the coherence term depends on epsilon.
  const double ca = std::cos(theta_a), sa = std::sin(theta_a);
  const double cb = std::cos(theta_b), sb = std::sin(theta_b);
  const double populations = 0.5 * (ca * ca * sb * sb + sa * sa * cb * cb);
  const double coherence = model.epsilon * std::cos(model.delta) * ca * sa * cb * sb;
  return populations + coherence;
}

Curve polarizer_curve(const PolarizationMixModel& model, double theta_a, std::size_t points) {
  Curve c;
  c.x.resize(points);
  c.y.resize(points);
  for (std::size_t j = 0; j < points; ++j) {
    c.x[j] = kPi * static_cast<double>(j) / static_cast<double>(points);
    c.y[j] = coincidence_vs_angles(model, theta_a, c.x[j]);
  }
  return c;
}

double curve_visibility(const PolarizationMixModel& model, double theta_a) {
  constexpr std::size_t kSweep = 720;
  const Curve sweep = polarizer_curve(model, theta_a, kSweep);
  const double step = kPi / kSweep;
  const auto refine = [&](std::size_t j, double sign) {
    const auto f = [&](double tb) { return sign * coincidence_vs_angles(model, theta_a, tb); };
    const auto best = boost::math::tools::brent_find_minima(f, sweep.x[j] - step,
                                                            sweep.x[j] + step, 52);
    // best.second is sign * rate; keep whichever of refined/sampled is more extreme.
    return sign * std::min(best.second, sign * sweep.y[j]);
  };
  const auto jmax = static_cast<std::size_t>(
      std::max_element(sweep.y.begin(), sweep.y.end()) - sweep.y.begin());
  const auto jmin = static_cast<std::size_t>(
      std::min_element(sweep.y.begin(), sweep.y.end()) - sweep.y.begin());
  const double hi = refine(jmax, -1.0);
  const double lo = refine(jmin, +1.0);
  const double sum = hi + lo;
  return sum > 0.0 ? (hi - lo) / sum : 0.0;
}

double epsilon_from_jsa(const JointSpectrum& js, double delay) {
  const double eps = std::abs(exchange_overlap(js, delay));
  if (eps > 1.0) {
    std::clog << "epsilon_from_jsa: overlap " << eps << " clamped to 1\n";
    return 1.0;
  }
  return eps;
}

}  // namespace tiltspdc
