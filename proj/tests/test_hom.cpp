#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tiltspdc/app/scenario.hpp"
#include "tiltspdc/errors.hpp"
#include "tiltspdc/hom.hpp"

using namespace tiltspdc;

namespace {

ScenarioConfig scenario(const char* name) {
  return app::resolve(app::ScenarioFile::load(std::string(TILTSPDC_SCENARIO_DIR) + "/" + name)).config;
}

JointSpectrum rotated_gaussian(std::size_t n, double span, double wp, double wm) {
  const auto grid = FrequencyGrid::square(n, span);
  const auto d = grid.signal.detunings();
  std::vector<std::complex<double>> amp(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      amp[a * n + b] = std::exp(-std::pow((d[a] + d[b]) / wp, 2) - std::pow((d[a] - d[b]) / wm, 2));
  return make_spectrum(grid, std::move(amp));
}

double interp(const HomTrace& t, double tau) {
  const double h = t.delays[1] - t.delays[0];
  const double u = (tau - t.delays.front()) / h;
  const auto j = static_cast<std::size_t>(std::floor(u));
  if (j + 1 >= t.delays.size()) return t.rate.back();
  const double f = u - j;
  return (1 - f) * t.rate[j] + f * t.rate[j + 1];
}

}  // namespace

TEST_CASE("visibility definition") {
  const std::vector<double> flat(50, 0.5);
  CHECK(visibility(flat) == 0.0);
  const std::vector<double> full{0.5, 0.25, 0.0, 0.25, 0.5};
  CHECK(visibility(full) == 1.0);
  CHECK_THROWS_AS(visibility(std::vector<double>{}), ValidationError);
}

TEST_CASE("exchange-symmetric spectrum gives a full dip") {
  const auto js = rotated_gaussian(128, 0.2, 0.05, 0.15);
  const auto s0 = s_zero(js);
  double integral = 0, imag = 0;
  for (std::size_t k = 0; k < s0.y.size(); ++k) {
    integral += s0.y[k].real();
    imag = std::max(imag, std::abs(s0.y[k].imag()));
    CHECK(std::abs(s0.y[k] - s0.y[s0.y.size() - 1 - k]) < 1e-14);
  }
  CHECK(imag == 0.0);
  CHECK(integral * (s0.x[1] - s0.x[0]) == doctest::Approx(1.0).epsilon(1e-12));
  const auto trace = coincidence_trace(js);
  CHECK(*std::min_element(trace.rate.begin(), trace.rate.end()) < 1e-6);
  CHECK(trace.visibility == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(std::abs(exchange_overlap(js, 0.0) - 1.0) < 1e-12);
}

TEST_CASE("sinc squared S0 gives a triangular dip") {
  const double a = 100.0;  // fs
  const double h = 0.005, span = 20.0;
  ComplexCurve s0;
  for (double w = -span; w <= span + 1e-9; w += h) {
    s0.x.push_back(w);
    s0.y.push_back(a / kPi * std::pow(oracle::sinc(a * w), 2));
  }
  std::vector<double> delays;
  for (int m = -300; m <= 300; ++m) delays.push_back(m * 1.0);
  const auto rate = rates_from_s_zero(s0, delays);
  double worst = 0;
  for (std::size_t m = 0; m < delays.size(); ++m) {
    const double tri = std::max(0.0, 1.0 - std::abs(delays[m]) / (2 * a));
    worst = std::max(worst, std::abs(rate[m] - 0.5 * (1 - tri)));
  }
  CHECK(worst / 0.5 < 1e-3);
}

TEST_CASE("FFT and direct quadrature agree") {
  const auto js = build_jsa(scenario("correlation.scn"));
  const auto fast = coincidence_trace_fft(js, 8192);
  const auto direct = rates_from_s_zero(s_zero(js), fast.delays);
  double ss = 0;
  for (std::size_t m = 0; m < direct.size(); ++m) ss += std::pow(direct[m] - fast.rate[m], 2);
  CHECK(std::sqrt(ss / direct.size()) < 1e-8);
  CHECK_THROWS_AS(coincidence_trace_fft(js, 100), ValidationError);
}

TEST_CASE("dip centers and visibilities of the default scenarios") {
  const auto no_tilt = build_jsa(scenario("no_tilt.scn"));
  const auto anti = build_jsa(scenario("anticorrelation.scn"));
  const auto corr = build_jsa(scenario("correlation.scn"));
  const auto t0 = coincidence_trace(no_tilt);
  const auto ta = coincidence_trace(anti);
  const auto tc = coincidence_trace(corr);
  const auto& w = no_tilt.context.waves;
  const double tau_no_tilt = (w.signal.N - w.idler.N) * 2000.0 / 2;
  CHECK(std::abs(t0.dip_center - tau_no_tilt) < 0.01 * tau_no_tilt);
  CHECK(std::abs(ta.dip_center) < 0.01 * tau_no_tilt);
  CHECK(std::abs(tc.dip_center - corr.context.predicted_dip_center()) < 0.01 * tau_no_tilt);
  CHECK(t0.visibility < 0.6);
  CHECK(ta.visibility >= 0.83);
  CHECK(tc.visibility >= 0.93);
  CHECK(ta.visibility - t0.visibility >= 0.3);
  for (const auto* t : {&t0, &ta, &tc}) {
    CHECK(t->visibility == visibility(t->rate));
    for (double r : t->rate) REQUIRE((r >= 0.0 && r <= 1.0));
    CHECK(std::abs(t->rate.front() - 0.5) < kEdgeTolerance);
    CHECK(std::abs(t->rate.back() - 0.5) < kEdgeTolerance);
  }

  const auto fit = fit_triangular_dip(tc);
  CHECK(fit.rms_residual < kTriangleResidual);
  CHECK(fit.triangular);

  // reflection about the fitted center
  for (const auto* t : {&ta, &tc}) {
    double worst = 0;
    const double half = 0.5 * (t->delays.back() - t->delays.front());
    for (double s = 0; s < 0.8 * half; s += 0.5) {
      worst = std::max(worst, std::abs(interp(*t, t->dip_center + s) - interp(*t, t->dip_center - s)));
    }
    CHECK(worst < 0.01);
  }
}

TEST_CASE("S0 against S- and its linear phase") {
  const auto anti = build_jsa(scenario("anticorrelation.scn"));
  const auto s0a = s_zero(anti);
  const auto sma = diagonal_spectra(anti).difference;
  REQUIRE(s0a.x.size() == sma.x.size());
  const double peak = *std::max_element(sma.y.begin(), sma.y.end());
  double worst = 0;
  for (std::size_t k = 0; k < sma.y.size(); ++k) worst = std::max(worst, std::abs(s0a.y[k] - sma.y[k]));
  CHECK(worst / peak < 0.01);

  const auto corr = build_jsa(scenario("correlation.scn"));
  const auto s0c = s_zero(corr);
  const auto smc = diagonal_spectra(corr).difference;
  const double pc = *std::max_element(smc.y.begin(), smc.y.end());
  double mag = 0;
  std::vector<double> xs, ph;
  double prev = 0, offset = 0;
  for (std::size_t k = 0; k < smc.y.size(); ++k) {
    mag = std::max(mag, std::abs(std::abs(s0c.y[k]) - smc.y[k]));
    if (smc.y[k] < 0.2 * pc) continue;
    double p = std::arg(s0c.y[k]);
    if (!xs.empty()) {
      while (p + offset - prev > kPi) offset -= 2 * kPi;
      while (p + offset - prev < -kPi) offset += 2 * kPi;
    }
    prev = p + offset;
    xs.push_back(s0c.x[k]);
    ph.push_back(prev);
  }
  CHECK(mag / pc < 0.03);
  double mx = 0, my = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    mx += xs[j] / xs.size();
    my += ph[j] / xs.size();
  }
  double sxy = 0, sxx = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    sxy += (xs[j] - mx) * (ph[j] - my);
    sxx += (xs[j] - mx) * (xs[j] - mx);
  }
  CHECK(sxy / sxx == doctest::Approx(corr.context.predicted_dip_center()).epsilon(0.01));
}

TEST_CASE("delay window guard and grid checks") {
  const auto js = build_jsa(scenario("correlation.scn"));
  const double c = js.context.predicted_dip_center();
  CHECK_THROWS_AS(coincidence_trace(js, DelayWindow{c - 50, c + 50, 201}), NumericalGuardError);
  CHECK_THROWS_AS(coincidence_trace(js, DelayWindow{10, 0, 201}), ValidationError);

  FrequencyGrid g{{64, 0.2}, {128, 0.2}, 0, 0};
  std::vector<std::complex<double>> amp(64 * 128, 1.0);
  const auto asym = make_spectrum(g, amp);
  try {
    s_zero(asym);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("asymmetric grid") != std::string::npos);
  }
}

TEST_CASE("dip center falls back to the minimum at a kink") {
  std::vector<double> d, r;
  for (int m = -100; m <= 100; ++m) {
    d.push_back(m + 0.3);
    r.push_back(0.5 * std::min(1.0, std::abs(m - 7) / 50.0));
  }
  CHECK(dip_center(d, r) == doctest::Approx(7.3).epsilon(1e-12));
  std::vector<double> p;
  for (double x : d) p.push_back(0.1 + 1e-4 * (x - 12.25) * (x - 12.25));
  CHECK(dip_center(d, p) == doctest::Approx(12.25).epsilon(1e-9));
}
