#include <omp.h>

#include <cmath>

#include "doctest.h"
#include "tiltspdc/biphoton.hpp"
#include "tiltspdc/hom.hpp"
#include "tiltspdc/units.hpp"

using namespace tiltspdc;

namespace {

ScenarioConfig config(double phi_sign_correlation) {
  ScenarioConfig cfg;
  cfg.crystal = bundled_crystal("BBO");
  cfg.pump.bandwidth_fwhm = 0.0036;
  cfg.grid = FrequencyGrid::square(256, 0.15);
  const auto ctx = resolve_context(cfg);
  cfg.pump.phi = phi_sign_correlation > 0
                     ? solve_tilt_correlation(ctx.waves.pump, ctx.waves.signal, ctx.waves.idler)
                     : solve_tilt_anticorrelation(ctx.waves.signal, ctx.waves.idler);
  return cfg;
}

}  // namespace

TEST_CASE("parallel and serial JSA fills are bit-identical") {
  omp_set_num_threads(4);
  for (double which : {-1.0, 1.0}) {
    auto cfg = config(which);
    cfg.pump.waist = 20.0;
    const auto a = build_jsa(cfg, ExecutionPolicy::kSerial);
    const auto b = build_jsa(cfg, ExecutionPolicy::kParallel);
    REQUIRE(a.amplitude.size() == b.amplitude.size());
    bool same = true;
    for (std::size_t j = 0; j < a.amplitude.size(); ++j) same = same && a.amplitude[j] == b.amplitude[j];
    CHECK(same);
  }
}

TEST_CASE("parallel and serial coincidence rates are bit-identical") {
  omp_set_num_threads(4);
  const auto js = build_jsa(config(1.0));
  const auto s0 = s_zero(js);
  std::vector<double> delays;
  for (int m = -500; m <= 1500; ++m) delays.push_back(0.7 * m);
  const auto serial = rates_from_s_zero(s0, delays, ExecutionPolicy::kSerial);
  const auto parallel = rates_from_s_zero(s0, delays, ExecutionPolicy::kParallel);
  CHECK(serial == parallel);
}

TEST_CASE("pump model matches the dispersion module") {
  const auto c = bundled_crystal("BBO");
  const double theta = phase_matching_angle(c, 0.405);
  const auto w = type2_waves(c, 0.405, theta);
  kernels::PumpModel p;
  p.ordinary = c.ordinary;
  p.extraordinary = c.extraordinary;
  p.cos2_theta = std::pow(std::cos(theta), 2);
  p.sin2_theta = std::pow(std::sin(theta), 2);
  p.omega0 = w.pump.omega0;
  p.k0 = w.pump.k;
  p.tan_rho = std::tan(w.pump.rho);
  p.tilt = std::tan(0.6) / kSpeedOfLight;
  const PropagationGeometry e{theta, Polarization::kExtraordinary};
  for (double d : {-0.2, -0.05, 0.0, 0.03, 0.25}) {
    const double kappa = d * p.tilt;
    const double expect = wavenumber(c, e, w.pump.omega0 + d) - w.pump.k - p.tan_rho * kappa -
                          kappa * kappa / (2 * w.pump.k);
    CHECK(p.relative_kz(d) == doctest::Approx(expect).epsilon(1e-12));
  }
  p.spectral_rate = 3.0;
  CHECK(p.envelope(0.1) == doctest::Approx(std::exp(-0.03)).epsilon(1e-15));
  p.waist = 50.0;
  const double kappa = 0.1 * p.tilt;
  CHECK(p.envelope(0.1) == doctest::Approx(std::exp(-0.03 - kappa * kappa * 2500 / 4)).epsilon(1e-14));
}
