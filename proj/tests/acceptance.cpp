// Acceptance criteria, one PASS/FAIL line each. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tiltspdc/app/scenario.hpp"
#include "tiltspdc/hom.hpp"
#include "tiltspdc/polarization.hpp"

using namespace tiltspdc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

ScenarioConfig scenario(const char* name) {
  return app::resolve(app::ScenarioFile::load(std::string(TILTSPDC_SCENARIO_DIR) + "/" + name)).config;
}

ScenarioConfig without_filters(ScenarioConfig cfg) {
  cfg.filter_signal.shape = FilterSpec::Shape::kNone;
  cfg.filter_idler.shape = FilterSpec::Shape::kNone;
  return cfg;
}

Type2Waves bbo_waves() {
  const auto c = bundled_crystal("BBO");
  return type2_waves(c, 0.405, phase_matching_angle(c, 0.405));
}

Outcome tilt_angles() {
  const auto w = bbo_waves();
  const double a = std::abs(rad_to_deg(solve_tilt_anticorrelation(w.signal, w.idler)));
  const double c = std::abs(rad_to_deg(solve_tilt_correlation(w.pump, w.signal, w.idler)));
  return {std::abs(a - 38.1) <= 1.5 && std::abs(c - 51.9) <= 1.5,
          "|phi_anti| = " + fmt("%.4f", a) + " deg, |phi_corr| = " + fmt("%.4f", c) + " deg"};
}

Outcome residuals() {
  const auto w = bbo_waves();
  const double a = solve_tilt_anticorrelation(w.signal, w.idler);
  const double c = solve_tilt_correlation(w.pump, w.signal, w.idler);
  const double ra = std::abs(effective_wave(w.signal, a).u - effective_wave(w.idler, a).u);
  const double rc = std::abs(d_plus(effective_wave(w.pump, c), effective_wave(w.signal, c),
                                    effective_wave(w.idler, c)));
  return {ra < 1e-9 && rc < 1e-9, "|u_s-u_i| = " + fmt("%.2e", ra) + ", |D+| = " + fmt("%.2e", rc) + " fs/um"};
}

struct Traces {
  JointSpectrum js[3];
  HomTrace trace[3];
};

const Traces& default_traces() {
  static const Traces t = [] {
    Traces t;
    const char* names[3] = {"no_tilt.scn", "anticorrelation.scn", "correlation.scn"};
    for (int j = 0; j < 3; ++j) {
      t.js[j] = build_jsa(scenario(names[j]));
      t.trace[j] = coincidence_trace(t.js[j]);
    }
    return t;
  }();
  return t;
}

Outcome dip_centers() {
  const auto& t = default_traces();
  const auto& w = t.js[0].context.waves;
  const double tau0 = (w.signal.N - w.idler.N) * t.js[0].context.length / 2.0;
  const double targets[3] = {tau0, 0.0, t.js[2].context.predicted_dip_center()};
  bool ok = true;
  std::string d;
  for (int j = 0; j < 3; ++j) {
    const double err = std::abs(t.trace[j].dip_center - targets[j]);
    ok = ok && err < 0.01 * std::abs(tau0);
    d += fmt("%.3f", t.trace[j].dip_center) + " vs " + fmt("%.3f", targets[j]) + " fs; ";
  }
  return {ok, d + "tolerance " + fmt("%.3f", 0.01 * std::abs(tau0)) + " fs"};
}

Outcome visibilities() {
  const auto& t = default_traces();
  const double v0 = t.trace[0].visibility, va = t.trace[1].visibility, vc = t.trace[2].visibility;
  const bool ok = v0 < 0.6 && va >= 0.83 && vc >= 0.93 && v0 < va && va < 1.0 && v0 < vc && vc <= 1.0;
  return {ok, "V(no tilt) = " + fmt("%.4f", v0) + ", V(anti) = " + fmt("%.6f", va) +
                  ", V(corr) = " + fmt("%.4f", vc)};
}

Outcome triangular_dip() {
  const auto& t = default_traces();
  const TriangleFit fit = fit_triangular_dip(t.trace[2]);
  // analytic: S0 = (a/pi) sinc^2(a W) transforms into an exact triangle
  const double a = 100.0, h = 0.005, span = 20.0;
  ComplexCurve s0;
  for (double w = -span; w <= span + 1e-9; w += h) {
    s0.x.push_back(w);
    s0.y.push_back(a / kPi * std::pow(oracle::sinc(a * w), 2));
  }
  std::vector<double> delays;
  for (int m = -300; m <= 300; ++m) delays.push_back(m);
  const auto rate = rates_from_s_zero(s0, delays);
  double worst = 0;
  for (std::size_t m = 0; m < delays.size(); ++m) {
    worst = std::max(worst, std::abs(rate[m] - 0.5 * (1 - std::max(0.0, 1 - std::abs(delays[m]) / (2 * a)))));
  }
  worst /= 0.5;
  return {fit.rms_residual < 0.02 && worst < 1e-3,
          "fit residual " + fmt("%.4f", fit.rms_residual) + " of depth; analytic triangle deviation " +
              fmt("%.2e", worst)};
}

Outcome marginal_closed_forms() {
  const auto& t = default_traces();
  double worst = 0;
  std::string d;
  const char* names[2] = {"anti", "corr"};
  for (int j = 1; j <= 2; ++j) {
    const auto cfg = scenario(j == 1 ? "anticorrelation.scn" : "correlation.scn");
    const auto b = j == 1 ? oracle::Branch::kAnticorrelation : oracle::Branch::kCorrelation;
    const auto diag = diagonal_spectra(t.js[j]);
    const double ep = oracle::max_peak_normalized_deviation(
        diag.sum.y, oracle::closed_s_plus(diag.sum.x, cfg, t.js[j].context, b));
    const double em = oracle::max_peak_normalized_deviation(
        diag.difference.y, oracle::closed_s_minus(diag.difference.x, cfg, t.js[j].context, b));
    worst = std::max({worst, ep, em});
    d += std::string(names[j - 1]) + " S+ " + fmt("%.4f", ep) + ", S- " + fmt("%.4f", em) + "; ";
  }
  return {worst < 0.03, d + "max pointwise deviation (peak-normalized)"};
}

Outcome cw_branches() {
  const auto c0 = scenario("cw_no_tilt.scn");
  const auto c1 = scenario("cw_anticorrelation.scn");
  const auto j0 = build_jsa(c0), j1 = build_jsa(c1);
  const auto& w = j0.context.waves;
  const auto m0 = marginal_signal(j0), m1 = marginal_signal(j1);
  const double f0 = fwhm(m0), f1 = fwhm(m1);
  const double a0 = fwhm(cw_signal_spectrum_analytic(w.signal, w.idler, c0.length, 0.0, m0.x));
  const double a1 = fwhm(cw_signal_spectrum_analytic(w.signal, w.idler, c1.length, c1.pump.phi, m1.x));
  const double e0 = std::abs(f0 / a0 - 1), e1 = std::abs(f1 / a1 - 1);
  return {e0 < 0.02 && e1 < 0.02 && f1 / f0 > 3,
          "FWHM error untilted " + fmt("%.4f", e0) + ", tilted " + fmt("%.4f", e1) + ", ratio " +
              fmt("%.2f", f1 / f0)};
}

Outcome correlation_sign() {
  const double ra = pearson_correlation(build_jsa(without_filters(scenario("anticorrelation.scn"))));
  const double rc = pearson_correlation(build_jsa(without_filters(scenario("correlation.scn"))));
  return {ra < -0.8 && rc > 0.8, "r(anti) = " + fmt("%.4f", ra) + ", r(corr) = " + fmt("%.4f", rc)};
}

Outcome polarization_model() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u01(0, 1), ang(-kPi, kPi);
  double oracle_err = 0, vis_err = 0, pur_err = 0;
  for (int j = 0; j < 100; ++j) {
    const PolarizationMixModel m{u01(rng), ang(rng)};
    const double ta = ang(rng), tb = ang(rng);
    oracle_err = std::max(oracle_err, std::abs(coincidence_vs_angles(m, ta, tb) -
                                               oracle::density_matrix_rate(m.epsilon, m.delta, ta, tb)));
    vis_err = std::max(vis_err, std::abs(curve_visibility(m, deg_to_rad(-45)) -
                                         m.epsilon * std::abs(std::cos(m.delta))));
    pur_err = std::max(pur_err, std::abs(purity(m) - (1 + m.epsilon * m.epsilon) / 2));
  }
  const auto& t = default_traces();
  const double eps = epsilon_from_jsa(t.js[2], t.trace[2].dip_center);
  const double p = purity({eps, 0.0});
  return {oracle_err < 1e-12 && vis_err < 1e-9 && pur_err == 0.0 && p > 0.95,
          "oracle " + fmt("%.1e", oracle_err) + ", V-eps|cosD| " + fmt("%.1e", vis_err) + ", P(corr) = " +
              fmt("%.5f", p)};
}

struct Scalars {
  std::vector<std::pair<std::string, double>> values;
};

Scalars reported(const ScenarioConfig& cfg) {
  const auto js = build_jsa(cfg);
  const auto diag = diagonal_spectra(js);
  const auto trace = coincidence_trace(js);
  Scalars s;
  s.values = {{"FWHM(S+)", fwhm(diag.sum)},
              {"FWHM(S-)", fwhm(diag.difference)},
              {"r", pearson_correlation(js)},
              {"K", schmidt_number(js)},
              {"V", trace.visibility},
              {"tau0", trace.dip_center},
              {"eps", epsilon_from_jsa(js, trace.dip_center)}};
  return s;
}

Outcome numerical_hygiene() {
  // finite differences
  const auto c = bundled_crystal("BBO");
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lam(0.25, 1.0), ang(0.0, kPi / 2);
  double fd = 0;
  for (Polarization pol : {Polarization::kOrdinary, Polarization::kExtraordinary}) {
    for (int j = 0; j < 50; ++j) {
      const PropagationGeometry g{ang(rng), pol};
      const auto wp = wave_parameters(c, g, lam(rng));
      const double h = 1e-4;
      const double n = (wavenumber(c, g, wp.omega0 + h) - wavenumber(c, g, wp.omega0 - h)) / (2 * h);
      fd = std::max(fd, std::abs(wp.N - n) / wp.N);
    }
  }
  // normalization
  const auto& t = default_traces();
  double norm = 0;
  for (const auto& js : t.js) norm = std::max(norm, std::abs(js.norm_squared() - 1));
  // grid doubling; dip centers compare against the no-tilt delay scale
  const auto& w = t.js[0].context.waves;
  const double tau_scale = std::abs(w.signal.N - w.idler.N) * t.js[0].context.length / 2.0;
  double worst = 0;
  std::string worst_name;
  for (const char* name : {"no_tilt.scn", "anticorrelation.scn", "correlation.scn"}) {
    auto cfg = scenario(name);
    const auto a = reported(cfg);
    cfg.grid = FrequencyGrid::square(2 * cfg.grid.signal.n_points, cfg.grid.signal.span);
    const auto b = reported(cfg);
    for (std::size_t j = 0; j < a.values.size(); ++j) {
      const double x = a.values[j].second, y = b.values[j].second;
      const double scale = a.values[j].first == "tau0" ? tau_scale : std::abs(x);
      const double rel = std::abs(x - y) / scale;
      if (rel > worst) {
        worst = rel;
        worst_name = std::string(name) + " " + a.values[j].first;
      }
    }
  }
  return {fd < 1e-6 && norm < 1e-10 && worst < 0.01,
          "N vs FD " + fmt("%.1e", fd) + ", |norm-1| " + fmt("%.1e", norm) + ", grid doubling " +
              fmt("%.2e", worst) + " (" + worst_name + ")"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 tilt-angle reproduction", tilt_angles},
      {"2 solver residual contracts", residuals},
      {"3 HOM dip centers", dip_centers},
      {"4 visibility ordering and bounds", visibilities},
      {"5 triangular dip", triangular_dip},
      {"6 diagonal marginals vs closed forms", marginal_closed_forms},
      {"7 CW branches", cw_branches},
      {"8 correlation-sign flip", correlation_sign},
      {"9 polarization model", polarization_model},
      {"10 numerical hygiene", numerical_hygiene},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  criterion %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
