#include "tiltspdc/biphoton.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <sstream>

#include "tiltspdc/errors.hpp"
#include "tiltspdc/units.hpp"

namespace tiltspdc {

double GridAxis::detuning(std::size_t j) const {
  const double m = static_cast<double>(n_points - 1);
  return span * (2.0 * static_cast<double>(j) - m) / m;
}

std::vector<double> GridAxis::detunings() const {
  std::vector<double> out(n_points);
  for (std::size_t j = 0; j < n_points; ++j) out[j] = detuning(j);
  return out;
}

FrequencyGrid FrequencyGrid::square(std::size_t n_points, double span) {
  return {{n_points, span}, {n_points, span}, 0.0, 0.0};
}

bool FrequencyGrid::exchange_symmetric() const {
  return signal.n_points == idler.n_points && signal.span == idler.span;
}

void FrequencyGrid::validate() const {
  for (const GridAxis* axis : {&signal, &idler}) {
    if (axis->n_points < kMinGridPoints) {
      throw ValidationError("frequency grid needs at least " + std::to_string(kMinGridPoints) +
                            " points per axis");
    }
    if (!(axis->span > 0.0)) throw ValidationError("frequency grid span must be > 0");
  }
}

double FilterSpec::amplitude(double detuning, double omega0) const {
  if (shape == Shape::kNone) return 1.0;
  const double lambda_c = center > 0.0 ? center : wavelength_from_omega(omega0);
  const double offset = omega_from_wavelength(lambda_c) - omega0;
  const double width = omega_width_from_wavelength_width(fwhm, lambda_c);
  const double x = detuning - offset;
  if (shape == Shape::kRectangular) return std::abs(x) <= 0.5 * width ? 1.0 : 0.0;
  // |F|^2 has FWHM `width`.
  return std::exp(-2.0 * std::log(2.0) * x * x / (width * width));
}

void FilterSpec::validate() const {
  if (shape != Shape::kNone && !(fwhm > 0.0)) throw ValidationError("filter FWHM must be > 0");
  if (center < 0.0) throw ValidationError("filter center must be > 0");
}

const char* to_string(FilterSpec::Shape shape) {
  switch (shape) {
    case FilterSpec::Shape::kNone:
      return "none";
    case FilterSpec::Shape::kGaussian:
      return "gaussian";
    case FilterSpec::Shape::kRectangular:
      return "rectangular";
  }
  return "?";
}

void ScenarioConfig::validate() const {
  if (!(length > 0.0)) throw ValidationError("crystal length must be > 0");
  if (theta) PropagationGeometry{*theta, Polarization::kOrdinary}.validate();
  pump.validate();
  filter_signal.validate();
  filter_idler.validate();
  grid.validate();
}

double JsaContext::predicted_dip_center() const { return 0.5 * (signal.u - idler.u) * length; }

double JointSpectrum::norm_squared() const {
  double sum = 0.0;
  for (const auto& z : amplitude) sum += std::norm(z);
  return sum * grid.signal.spacing() * grid.idler.spacing();
}

void JointSpectrum::normalize() {
  const double n2 = norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw NumericalGuardError("joint spectrum has zero or non-finite norm");
  }
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& z : amplitude) z *= scale;
  normalized = true;
}

JsaContext resolve_context(const ScenarioConfig& config) {
  JsaContext ctx;
  const double theta =
      config.theta ? *config.theta : phase_matching_angle(config.crystal, config.pump.lambda_p);
  ctx.waves = type2_waves(config.crystal, config.pump.lambda_p, theta);
  ctx.phi = config.pump.phi;
  ctx.length = config.length;
  ctx.cw = config.pump.is_cw();
  ctx.pump = effective_wave(ctx.waves.pump, ctx.phi);
  ctx.signal = effective_wave(ctx.waves.signal, ctx.phi);
  ctx.idler = effective_wave(ctx.waves.idler, ctx.phi);
  return ctx;
}

namespace {

// Half-width where |a| h + |b| h^2 reaches 2 pi / L, i.e. the first zero of
// sinc(Delta_k L / 2) along one diagonal direction.
double lobe_half_width(double linear, double quadratic, double length) {
  const double target = 2.0 * kPi / length;
  const double a = std::abs(linear);
  const double b = std::abs(quadratic);
  if (b == 0.0) return a == 0.0 ? std::numeric_limits<double>::infinity() : target / a;
  return (-a + std::sqrt(a * a + 4.0 * b * target)) / (2.0 * b);
}

void check_resolution(const ScenarioConfig& config, const JsaContext& ctx, double pump_fwhm) {
  const double h = std::max(config.grid.signal.spacing(), config.grid.idler.spacing());
  // Along Omega+ (or Omega-) at fixed conjugate coordinate the lattice step is 2h.
  const double step = 2.0 * h;
  struct Feature {
    const char* name;
    double width;
  };
  std::vector<Feature> features;
  if (!config.pump.is_cw()) features.push_back({"pump bandwidth", pump_fwhm});
  const double tilt = std::tan(config.pump.phi) / kSpeedOfLight;
  if (std::isfinite(config.pump.waist) && tilt != 0.0) {
    features.push_back(
        {"pump transverse envelope", 2.0 * std::sqrt(2.0 * std::log(2.0)) /
                                         (std::abs(tilt) * config.pump.waist)});
  }
  const double dplus = d_plus(ctx.pump, ctx.signal, ctx.idler);
  const double gsum = ctx.signal.g + ctx.idler.g;
  features.push_back({"phase-matching lobe (Omega+)",
                      2.0 * lobe_half_width(dplus, 0.5 * (ctx.pump.g - 0.25 * gsum),
                                            config.length)});
  features.push_back({"phase-matching lobe (Omega-)",
                      2.0 * lobe_half_width(0.5 * (ctx.signal.u - ctx.idler.u), gsum / 8.0,
                                            config.length)});
  const auto narrowest = std::min_element(
      features.begin(), features.end(),
      [](const Feature& x, const Feature& y) { return x.width < y.width; });
  if (narrowest->width / step < kMinSamplesPerFeature) {
    std::ostringstream msg;
    msg << "frequency grid too coarse: " << narrowest->name << " is " << narrowest->width
        << " rad/fs wide but the diagonal sample step is " << step << " rad/fs ("
        << narrowest->width / step << " samples, need " << kMinSamplesPerFeature << ")";
    if (!config.pump.is_cw()) msg << "; pump bandwidth " << pump_fwhm << " rad/fs";
    throw NumericalGuardError(msg.str());
  }
}

}  // namespace

JointSpectrum build_jsa(const ScenarioConfig& config, ExecutionPolicy policy) {
  config.validate();
  const JsaContext ctx = resolve_context(config);
  const auto& waves = ctx.waves;

  JointSpectrum js;
  js.grid = config.grid;
  js.grid.omega_s0 = waves.signal.omega0;
  js.grid.omega_i0 = waves.idler.omega0;
  js.context = ctx;

  const std::vector<double> ds = js.grid.signal.detunings();
  const std::vector<double> di = js.grid.idler.detunings();
  const auto& crystal = config.crystal;
  crystal.check_range(wavelength_from_omega(js.grid.omega_s0 - js.grid.signal.span));
  crystal.check_range(wavelength_from_omega(js.grid.omega_s0 + js.grid.signal.span));
  crystal.check_range(wavelength_from_omega(js.grid.omega_i0 - js.grid.idler.span));
  crystal.check_range(wavelength_from_omega(js.grid.omega_i0 + js.grid.idler.span));
  const double pump_span = js.grid.signal.span + js.grid.idler.span;
  crystal.check_range(wavelength_from_omega(waves.pump.omega0 - pump_span));
  crystal.check_range(wavelength_from_omega(waves.pump.omega0 + pump_span));

  const double tilt = std::tan(ctx.phi) / kSpeedOfLight;
  const auto transverse = [&](const WaveParameters& w, double detuning) {
    const double kappa = detuning * tilt;
    return -std::tan(w.rho) * kappa - kappa * kappa / (2.0 * w.k);
  };
  const PropagationGeometry o{waves.theta, Polarization::kOrdinary};
  const PropagationGeometry e{waves.theta, Polarization::kExtraordinary};

  std::vector<double> kzs(ds.size()), kzi(di.size()), fs(ds.size()), fi(di.size());
  for (std::size_t a = 0; a < ds.size(); ++a) {
    kzs[a] = wavenumber(crystal, o, waves.signal.omega0 + ds[a]) - waves.signal.k +
             transverse(waves.signal, ds[a]);
    fs[a] = config.filter_signal.amplitude(ds[a], waves.signal.omega0);
  }
  for (std::size_t b = 0; b < di.size(); ++b) {
    kzi[b] = wavenumber(crystal, e, waves.idler.omega0 + di[b]) - waves.idler.k +
             transverse(waves.idler, di[b]);
    fi[b] = config.filter_idler.amplitude(di[b], waves.idler.omega0);
  }

  const double h = std::max(js.grid.signal.spacing(), js.grid.idler.spacing());
  const double pump_fwhm =
      config.pump.is_cw()
          ? h  // discrete stand-in for a monochromatic pump
          : omega_width_from_wavelength_width(*config.pump.bandwidth_fwhm, config.pump.lambda_p);
  check_resolution(config, ctx, pump_fwhm);

  kernels::PumpModel pump;
  pump.ordinary = crystal.ordinary;
  pump.extraordinary = crystal.extraordinary;
  pump.cos2_theta = std::cos(waves.theta) * std::cos(waves.theta);
  pump.sin2_theta = std::sin(waves.theta) * std::sin(waves.theta);
  pump.omega0 = waves.pump.omega0;
  pump.k0 = waves.pump.k;
  pump.tan_rho = std::tan(waves.pump.rho);
  pump.tilt = tilt;
  pump.spectral_rate = 2.0 * std::log(2.0) / (pump_fwhm * pump_fwhm);
  pump.waist = std::isfinite(config.pump.waist) ? config.pump.waist : 0.0;

  kernels::JsaProblem problem;
  problem.pump = pump;
  problem.signal_detuning = ds;
  problem.idler_detuning = di;
  problem.signal_kz = kzs;
  problem.idler_kz = kzi;
  problem.signal_filter = fs;
  problem.idler_filter = fi;
  problem.mismatch0 = waves.pump.k - waves.signal.k - waves.idler.k;
  problem.length = config.length;
  problem.include_phase = config.include_phase;

  js.amplitude.resize(ds.size() * di.size());
  kernels::fill_jsa(problem, js.amplitude, policy);
  for (const auto& z : js.amplitude) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NumericalGuardError("non-finite joint spectral amplitude");
    }
  }
  js.normalize();
  return js;
}

JointSpectrum make_spectrum(const FrequencyGrid& grid, std::vector<std::complex<double>> amplitude,
                            bool normalize) {
  grid.validate();
  if (amplitude.size() != grid.signal.n_points * grid.idler.n_points) {
    throw ValidationError("amplitude size does not match the grid");
  }
  JointSpectrum js;
  js.grid = grid;
  js.amplitude = std::move(amplitude);
  if (normalize) js.normalize();
  return js;
}

}  // namespace tiltspdc
