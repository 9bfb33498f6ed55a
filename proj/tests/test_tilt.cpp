#include <cmath>

#include "doctest.h"
#include "tiltspdc/errors.hpp"
#include "tiltspdc/tilt.hpp"
#include "tiltspdc/units.hpp"

using namespace tiltspdc;

namespace {

Type2Waves bbo_waves() {
  const auto c = bundled_crystal("BBO");
  return type2_waves(c, 0.405, phase_matching_angle(c, 0.405));
}

WaveParameters synthetic(double N, double rho, double k = 12.0, double D = 0.05) {
  WaveParameters w;
  w.lambda0 = 0.8;
  w.omega0 = omega_from_wavelength(0.8);
  w.n = 1.6;
  w.k = k;
  w.N = N;
  w.D = D;
  w.rho = rho;
  return w;
}

}  // namespace

TEST_CASE("BBO tilt angles") {
  const auto w = bbo_waves();
  const double anti = solve_tilt_anticorrelation(w.signal, w.idler);
  const double corr = solve_tilt_correlation(w.pump, w.signal, w.idler);
  CHECK(rad_to_deg(anti) == doctest::Approx(-38.108357115468167985).epsilon(1e-10));
  CHECK(rad_to_deg(corr) == doctest::Approx(51.837170879522408921).epsilon(1e-10));
  CHECK(std::abs(std::abs(rad_to_deg(anti)) - 38.1) < 1.5);
  CHECK(std::abs(std::abs(rad_to_deg(corr)) - 51.9) < 1.5);

  const auto us = effective_wave(w.signal, anti), ui = effective_wave(w.idler, anti);
  CHECK(std::abs(us.u - ui.u) < 1e-9);
  const auto p = effective_wave(w.pump, corr), s = effective_wave(w.signal, corr),
             i = effective_wave(w.idler, corr);
  CHECK(std::abs(d_plus(p, s, i)) < 1e-9);

  // flipping the sign breaks the defining residual
  CHECK(std::abs(effective_wave(w.signal, -anti).u - effective_wave(w.idler, -anti).u) > 1e-3);
  CHECK(std::abs(d_plus(effective_wave(w.pump, -corr), effective_wave(w.signal, -corr),
                        effective_wave(w.idler, -corr))) > 1e-3);
}

TEST_CASE("effective wave") {
  const auto w = bbo_waves();
  const auto e0 = effective_wave(w.idler, 0.0);
  CHECK(e0.u == w.idler.N);
  CHECK(e0.g == w.idler.D);
  const auto o = effective_wave(w.signal, 0.4);
  CHECK(o.u == w.signal.N);
  CHECK(o.g < w.signal.D);
  for (double phi = -1.4; phi <= 1.4; phi += 0.1) {
    const auto e = effective_wave(w.pump, phi);
    if (std::abs(phi) > 1e-12) CHECK(e.g < w.pump.D);
    const double t = std::tan(phi) / kSpeedOfLight;
    CHECK(e.u == doctest::Approx(w.pump.N - std::tan(w.pump.rho) * t).epsilon(1e-15));
    CHECK(e.g == doctest::Approx(w.pump.D - t * t / w.pump.k).epsilon(1e-15));
  }
  const auto p = effective_wave(w.pump, 0), s = effective_wave(w.signal, 0), i = effective_wave(w.idler, 0);
  CHECK(d_plus(p, s, i) == doctest::Approx(w.pump.N - 0.5 * (w.signal.N + w.idler.N)).epsilon(1e-15));
}

TEST_CASE("synthetic anticorrelation solutions") {
  CHECK(solve_tilt_anticorrelation(synthetic(5.0, 0.0), synthetic(5.0, 0.05)) == 0.0);
  // N_s - N_i = 0.01, tan(rho_s) - tan(rho_i) = 0.1 -> tan(phi) = c * 0.1
  const auto s = synthetic(5.01, std::atan(0.15)), i = synthetic(5.0, std::atan(0.05));
  const double phi = solve_tilt_anticorrelation(s, i);
  CHECK(std::tan(phi) == doctest::Approx(kSpeedOfLight * 0.1).epsilon(1e-12));
  try {
    solve_tilt_anticorrelation(synthetic(5.01, 0.05), synthetic(5.0, 0.05));
    FAIL("expected PhysicsError");
  } catch (const PhysicsError& e) {
    CHECK(std::string(e.what()).find("no tilt can equalize group velocities") != std::string::npos);
  }
}

TEST_CASE("synthetic correlation solutions") {
  CHECK(solve_tilt_correlation(synthetic(5.0, 0.1), synthetic(4.0, 0.0), synthetic(6.0, 0.05)) == 0.0);
  const auto p = synthetic(5.2, 0.08), s = synthetic(5.1, 0.0), i = synthetic(4.9, 0.06);
  const double phi = solve_tilt_correlation(p, s, i);
  // scan oracle in steps of 1e-4 rad
  double best = 0, best_res = 1e300;
  for (double t = -1.5; t <= 1.5; t += 1e-4) {
    const double r = std::abs(d_plus(effective_wave(p, t), effective_wave(s, t), effective_wave(i, t)));
    if (r < best_res) {
      best_res = r;
      best = t;
    }
  }
  CHECK(std::abs(phi - best) <= 1e-4);
  try {
    solve_tilt_correlation(synthetic(5.2, 0.05), synthetic(5.1, 0.05), synthetic(4.9, 0.05));
    FAIL("expected PhysicsError");
  } catch (const PhysicsError& e) {
    CHECK(std::string(e.what()).find("no tilt can achieve correlation condition") != std::string::npos);
  }
}

TEST_CASE("grating equation") {
  GratingSpec g{1200, 1, deg_to_rad(10), std::nullopt};
  CHECK(g.groove_spacing() == doctest::Approx(1.0 / 1.2).epsilon(1e-15));
  const double beta = diffraction_angle(g, 0.405);
  CHECK(std::abs(0.405 / g.groove_spacing() - (std::sin(g.theta0) + std::sin(beta))) < 1e-12);

  GratingSpec zero{1200, 0, deg_to_rad(20), std::nullopt};
  CHECK(diffraction_angle(zero, 0.405) == doctest::Approx(-deg_to_rad(20)).epsilon(1e-15));
  CHECK(angular_dispersion(zero, 0.405) == 0.0);
  const auto t0 = tilt_from_grating(zero, 0.405);
  CHECK(t0.phi == 0.0);
  CHECK(std::abs(t0.alpha) == doctest::Approx(1.0).epsilon(1e-15));

  GratingSpec normal{1200, 1, 0.0, 0.0};
  CHECK(angular_dispersion(normal, 0.405) == doctest::Approx(1.2).epsilon(1e-15));

  // m lambda / d - sin(theta0) = 1.2
  GratingSpec evanescent{1000.0, 1, std::asin(0.405 - 1.2), std::nullopt};
  CHECK_THROWS_AS(diffraction_angle(evanescent, 0.405), PhysicsError);
  GratingSpec grazing{1200, 1, 0.0, kPi / 2};
  CHECK_THROWS_AS(angular_dispersion(grazing, 0.405), PhysicsError);
}

TEST_CASE("grating design round trip") {
  const auto w = bbo_waves();
  const double anti = solve_tilt_anticorrelation(w.signal, w.idler);
  const double corr = solve_tilt_correlation(w.pump, w.signal, w.idler);

  const GratingSpec g1 = design_grating(anti, 1200, 1, 0.405);
  const auto t1 = tilt_from_grating({g1.groove_density, g1.order, g1.theta0, std::nullopt}, 0.405);
  CHECK(t1.phi == doctest::Approx(anti).epsilon(1e-12));
  CHECK(std::abs(std::abs(rad_to_deg(t1.phi)) - 38.1) < 0.2);
  // cos(beta0) from inverting tan(phi) = -lambda m / (d cos beta0)
  CHECK(std::cos(*g1.beta0) == doctest::Approx(-0.405 * 1.2 / std::tan(anti)).epsilon(1e-12));
  CHECK(t1.alpha == doctest::Approx(-std::cos(g1.theta0) / std::cos(*g1.beta0)).epsilon(1e-14));

  const GratingSpec g2 = design_grating(corr, 2400, -1, 0.405);
  const auto t2 = tilt_from_grating({g2.groove_density, g2.order, g2.theta0, std::nullopt}, 0.405);
  CHECK(t2.phi == doctest::Approx(corr).epsilon(1e-12));
  CHECK(std::abs(std::abs(rad_to_deg(t2.phi)) - 51.9) < 0.2);
  CHECK(std::tan(corr) == doctest::Approx(-0.405 * angular_dispersion(g2, 0.405)).epsilon(1e-12));

  // wrong order sign cannot produce the requested tilt sign
  CHECK_THROWS_AS(design_grating(anti, 1200, -1, 0.405), PhysicsError);
}

TEST_CASE("littrow mount") {
  const GratingSpec g = littrow_grating(1200, 1, 0.405);
  CHECK(*g.beta0 == doctest::Approx(g.theta0).epsilon(1e-15));
  CHECK(2 * std::sin(g.theta0) == doctest::Approx(0.405 * 1.2).epsilon(1e-14));
}

TEST_CASE("pump config validation") {
  TiltedPumpConfig p;
  CHECK_NOTHROW(p.validate());
  p.waist = -1;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.waist = 100;
  p.phi = kPi / 2;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.phi = 0;
  p.bandwidth_fwhm = 0.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
}
