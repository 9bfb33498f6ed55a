#include "tiltspdc/app/commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "tiltspdc/errors.hpp"
#include "tiltspdc/hom.hpp"
#include "tiltspdc/polarization.hpp"
#include "tiltspdc/spectra.hpp"
#include "tiltspdc/units.hpp"

namespace tiltspdc::app {

namespace {

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

std::filesystem::path prepare_output(const ResolvedScenario& r, const RunOptions& options) {
  const std::filesystem::path dir = options.out_dir ? *options.out_dir : r.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void emit(Manifest& manifest, const std::filesystem::path& dir, const std::string& name,
          const std::string& bytes) {
  manifest.add_file(name, write_file(dir / name, bytes));
}

nlohmann::json wave_json(const EffectiveWave& w) {
  return {{"lambda_um", w.base.lambda0}, {"N_fs_per_um", w.base.N},  {"D_fs2_per_um", w.base.D},
          {"rho_rad", w.base.rho},       {"u_fs_per_um", w.u},       {"g_fs2_per_um", w.g}};
}

// Every physical input after defaults are applied, with the unit in the key.
nlohmann::json inputs_json(const ResolvedScenario& r) {
  const auto& c = r.config;
  const auto filter = [](const FilterSpec& f) {
    return nlohmann::json{{"shape", to_string(f.shape)}, {"fwhm_um", f.fwhm}, {"center_um", f.center}};
  };
  nlohmann::json in = {
      {"crystal", c.crystal.name},
      {"theta_deg", rad_to_deg(r.context.waves.theta)},
      {"length_um", c.length},
      {"pump_wavelength_um", c.pump.lambda_p},
      {"pump_cw", c.pump.is_cw()},
      {"pump_waist_um", std::isinf(c.pump.waist) ? nlohmann::json("inf") : nlohmann::json(c.pump.waist)},
      {"phi_deg", rad_to_deg(c.pump.phi)},
      {"alpha", c.pump.alpha},
      {"filter_signal", filter(c.filter_signal)},
      {"filter_idler", filter(c.filter_idler)},
      {"grid_points", c.grid.signal.n_points},
      {"grid_span_rad_per_fs", c.grid.signal.span},
      {"include_phase", c.include_phase}};
  if (c.pump.bandwidth_fwhm) in["pump_fwhm_um"] = *c.pump.bandwidth_fwhm;
  return in;
}

void context_results(nlohmann::json& res, const ResolvedScenario& r) {
  res["theta_pm_deg"] = rad_to_deg(r.context.waves.theta);
  res["phi_deg"] = rad_to_deg(r.context.phi);
  res["tilt_source"] = to_string(r.tilt_source);
  if (r.grating) {
    res["grating"] = {{"lines_per_mm", r.grating->groove_density},
                      {"order", r.grating->order},
                      {"theta0_deg", rad_to_deg(r.grating->theta0)},
                      {"beta0_deg", rad_to_deg(*r.grating->beta0)},
                      {"alpha", r.config.pump.alpha}};
  }
}

DataTable curve_table(const std::string& hash) {
  DataTable t;
  t.add_header("scenario_hash", hash);
  return t;
}

}  // namespace

nlohmann::json cmd_tilt_solve(const ScenarioFile& scenario, const RunOptions& options,
                              std::ostream& report) {
  // The tilt-solve command only needs the dispersion state, not a tilt; a
  // scenario without any tilt key is fine here.
  ScenarioFile s = scenario;
  const std::optional<std::string> directive = s.get("pump.tilt");
  if (!s.has("pump.phi") && !s.has("grating.lines") && !s.has("pump.tilt")) s.set("pump.phi", "0deg");
  const ResolvedScenario r = resolve(s, options.grid_points);
  const auto dir = prepare_output(r, options);
  Manifest manifest("tilt-solve", scenario);
  manifest.set_inputs(inputs_json(r));
  auto& res = manifest.results();
  const Type2Waves& w = r.context.waves;
  res["theta_pm_deg"] = rad_to_deg(w.theta);

  struct Solution {
    std::string name;
    double phi;
  };
  std::vector<Solution> solutions;
  const auto attempt = [&](const std::string& name, auto&& solve) {
    if (directive && *directive != name) return;
    try {
      solutions.push_back({name, solve()});
    } catch (const PhysicsError& e) {
      if (directive) throw;
      res[name] = {{"attainable", false}, {"reason", e.what()}};
      report << name << ": unattainable (" << e.what() << ")\n";
    }
  };
  attempt("anticorrelation", [&] { return solve_tilt_anticorrelation(w.signal, w.idler); });
  attempt("correlation", [&] { return solve_tilt_correlation(w.pump, w.signal, w.idler); });

  report << "phase-matching angle: " << fmt("%.6f", rad_to_deg(w.theta)) << " deg\n";
  DataTable table = curve_table(hex64(scenario.hash()));
  table.add_header("theta_pm_deg", format_double(rad_to_deg(w.theta)));
  std::vector<double> col_phi, col_wave, col_n, col_d, col_rho, col_u, col_g;
  for (const auto& sol : solutions) {
    const EffectiveWave p = effective_wave(w.pump, sol.phi);
    const EffectiveWave si = effective_wave(w.signal, sol.phi);
    const EffectiveWave id = effective_wave(w.idler, sol.phi);
    const double residual = sol.name == "anticorrelation" ? si.u - id.u : d_plus(p, si, id);
    nlohmann::json entry = {{"attainable", true},
                            {"phi_deg", rad_to_deg(sol.phi)},
                            {"residual_fs_per_um", residual},
                            {"pump", wave_json(p)},
                            {"signal", wave_json(si)},
                            {"idler", wave_json(id)}};
    report << sol.name << ": phi = " << fmt("%.6f", rad_to_deg(sol.phi))
           << " deg, residual = " << fmt("%.3e", residual) << " fs/um\n";
    report << "  wave     u (fs/um)        g (fs^2/um)\n";
    int code = 0;
    for (const EffectiveWave* e : {&p, &si, &id}) {
      static const char* names[] = {"pump", "signal", "idler"};
      report << "  " << names[code] << std::string(9 - std::string(names[code]).size(), ' ')
             << fmt("%.10f", e->u) << "  " << fmt("%.10f", e->g) << "\n";
      col_phi.push_back(rad_to_deg(sol.phi));
      col_wave.push_back(code++);
      col_n.push_back(e->base.N);
      col_d.push_back(e->base.D);
      col_rho.push_back(e->base.rho);
      col_u.push_back(e->u);
      col_g.push_back(e->g);
    }
    nlohmann::json gratings = nlohmann::json::array();
    const int sign = sol.phi > 0.0 ? -1 : 1;
    for (const double density : {600.0, 1200.0, 1800.0, 2400.0}) {
      for (const int m : {sign, 2 * sign}) {
        try {
          const GratingSpec g = design_grating(sol.phi, density, m, r.config.pump.lambda_p);
          const PulseFrontTilt t = tilt_from_grating(g, r.config.pump.lambda_p);
          gratings.push_back({{"lines_per_mm", density},
                              {"order", m},
                              {"theta0_deg", rad_to_deg(g.theta0)},
                              {"beta0_deg", rad_to_deg(*g.beta0)},
                              {"alpha", t.alpha}});
          report << "  grating " << fmt("%.0f", density) << " l/mm, m = " << m
                 << ": theta0 = " << fmt("%.3f", rad_to_deg(g.theta0))
                 << " deg, beta0 = " << fmt("%.3f", rad_to_deg(*g.beta0)) << " deg\n";
        } catch (const PhysicsError&) {
        }
      }
    }
    entry["gratings"] = gratings;
    res[sol.name] = entry;
  }
  table.add_header("wave codes", "0 pump, 1 signal, 2 idler");
  table.add_column("phi_deg", col_phi);
  table.add_column("wave", col_wave);
  table.add_column("N_fs_per_um", col_n);
  table.add_column("D_fs2_per_um", col_d);
  table.add_column("rho_rad", col_rho);
  table.add_column("u_fs_per_um", col_u);
  table.add_column("g_fs2_per_um", col_g);
  emit(manifest, dir, "tilt.txt", table.render());
  manifest.write(dir);
  return manifest.json();
}

nlohmann::json cmd_jsi(const ScenarioFile& scenario, const RunOptions& options, std::ostream& report) {
  const ResolvedScenario r = resolve(scenario, options.grid_points);
  const JointSpectrum js = build_jsa(r.config);
  const auto dir = prepare_output(r, options);
  const std::string hash = hex64(scenario.hash());
  Manifest manifest("jsi", scenario);
  manifest.set_inputs(inputs_json(r));
  auto& res = manifest.results();
  context_results(res, r);

  if (options.format == DataFormat::kBinary) {
    emit(manifest, dir, "jsa.bin", render_jsa(js, DataFormat::kBinary, hash));
  } else {
    emit(manifest, dir, "jsi.txt", render_jsa(js, DataFormat::kText, hash));
  }
  const Curve ms = marginal_signal(js);
  const Curve mi = marginal_idler(js);
  DataTable marg = curve_table(hash);
  marg.add_column("omega_s", ms.x);
  marg.add_column("S_signal", ms.y);
  marg.add_column("omega_i", mi.x);
  marg.add_column("S_idler", mi.y);
  emit(manifest, dir, "marginals.txt", marg.render());

  const DiagonalSpectra diag = diagonal_spectra(js);
  DataTable dt = curve_table(hash);
  dt.add_column("omega_plus", diag.sum.x);
  dt.add_column("S_plus", diag.sum.y);
  dt.add_column("omega_minus", diag.difference.x);
  dt.add_column("S_minus", diag.difference.y);
  emit(manifest, dir, "diagonal.txt", dt.render());

  res["pearson_r"] = pearson_correlation(js);
  res["schmidt_number"] = schmidt_number(js);
  res["fwhm_S_plus_rad_per_fs"] = fwhm(diag.sum);
  res["fwhm_S_minus_rad_per_fs"] = fwhm(diag.difference);
  res["fwhm_signal_rad_per_fs"] = fwhm(ms);
  res["grid_points"] = js.rows();
  res["grid_span_rad_per_fs"] = js.grid.signal.span;
  report << "phi = " << fmt("%.4f", rad_to_deg(r.context.phi)) << " deg (" << to_string(r.tilt_source)
         << ")\n"
         << "pearson r = " << fmt("%.4f", res["pearson_r"].get<double>())
         << ", schmidt K = " << fmt("%.4f", res["schmidt_number"].get<double>()) << "\n";
  manifest.write(dir);
  return manifest.json();
}

nlohmann::json cmd_hom(const ScenarioFile& scenario, const RunOptions& options, std::ostream& report) {
  const ResolvedScenario r = resolve(scenario, options.grid_points);
  const JointSpectrum js = build_jsa(r.config);
  const HomTrace trace =
      r.delay_window ? coincidence_trace(js, *r.delay_window) : coincidence_trace(js);
  const auto dir = prepare_output(r, options);
  Manifest manifest("hom", scenario);
  manifest.set_inputs(inputs_json(r));
  auto& res = manifest.results();
  context_results(res, r);
  res["visibility"] = trace.visibility;
  res["dip_center_fs"] = trace.dip_center;
  res["predicted_dip_center_fs"] = js.context.predicted_dip_center();
  try {
    const TriangleFit fit = fit_triangular_dip(trace);
    res["triangular"] = fit.triangular;
    res["triangle_rms_residual"] = fit.rms_residual;
  } catch (const NumericalGuardError& e) {
    // too shallow to fit; the trace itself is still valid
    res["triangular"] = false;
    res["triangle_rms_residual"] = nullptr;
    res["triangle_fit_note"] = e.what();
  }
  res["delay_min_fs"] = trace.delays.front();
  res["delay_max_fs"] = trace.delays.back();

  DataTable t = curve_table(hex64(scenario.hash()));
  t.add_header("visibility", format_double(trace.visibility));
  t.add_header("dip_center_fs", format_double(trace.dip_center));
  t.add_column("tau_fs", trace.delays);
  t.add_column("rate", trace.rate);
  emit(manifest, dir, "hom.txt", t.render());
  report << "visibility = " << fmt("%.4f", trace.visibility)
         << ", dip center = " << fmt("%.3f", trace.dip_center) << " fs (predicted "
         << fmt("%.3f", js.context.predicted_dip_center()) << " fs)\n";
  manifest.write(dir);
  return manifest.json();
}

nlohmann::json cmd_cw_spectrum(const ScenarioFile& scenario, const RunOptions& options,
                               std::ostream& report) {
  const ResolvedScenario r = resolve(scenario, options.grid_points);
  if (!r.config.pump.is_cw()) throw ValidationError("cw-spectrum needs a CW pump (pump.cw = true)");
  const JointSpectrum js = build_jsa(r.config);
  const auto dir = prepare_output(r, options);
  Manifest manifest("cw-spectrum", scenario);
  manifest.set_inputs(inputs_json(r));
  auto& res = manifest.results();
  context_results(res, r);

  Curve numeric = marginal_signal(js);
  double peak = 0.0;
  for (double y : numeric.y) peak = std::max(peak, y);
  for (double& y : numeric.y) y /= peak;
  const auto& w = r.context.waves;
  const CwBranch branch = cw_branch(w.signal, w.idler, r.context.phi);
  DataTable t = curve_table(hex64(scenario.hash()));
  t.add_column("omega_s", numeric.x);
  t.add_column("S_numeric", numeric.y);
  const double fw_num = fwhm(numeric);
  res["fwhm_numeric_rad_per_fs"] = fw_num;
  if (branch != CwBranch::kNone) {
    const Curve analytic =
        cw_signal_spectrum_analytic(w.signal, w.idler, r.config.length, r.context.phi, numeric.x);
    const double fw_an = fwhm(analytic);
    res["branch"] = branch == CwBranch::kUntilted ? "untilted" : "anticorrelation";
    res["fwhm_analytic_rad_per_fs"] = fw_an;
    res["fwhm_relative_difference"] = std::abs(fw_num - fw_an) / fw_an;
    t.add_column("S_analytic", analytic.y);
    report << "FWHM numeric = " << fmt("%.5f", fw_num) << " rad/fs, analytic = " << fmt("%.5f", fw_an)
           << " rad/fs\n";
  } else {
    res["branch"] = "none";
    report << "FWHM numeric = " << fmt("%.5f", fw_num)
           << " rad/fs (no closed form for this tilt)\n";
  }
  emit(manifest, dir, "cw_spectrum.txt", t.render());
  manifest.write(dir);
  return manifest.json();
}

nlohmann::json cmd_polarization(const ScenarioFile& scenario, const RunOptions& options,
                                std::ostream& report) {
  const ResolvedScenario r = resolve(scenario, options.grid_points);
  double epsilon = 0.0;
  double tau0 = 0.0;
  if (r.polarization_epsilon) {
    epsilon = *r.polarization_epsilon;
  } else {
    const JointSpectrum js = build_jsa(r.config);
    const HomTrace trace =
        r.delay_window ? coincidence_trace(js, *r.delay_window) : coincidence_trace(js);
    tau0 = trace.dip_center;
    epsilon = epsilon_from_jsa(js, tau0);
  }
  const PolarizationMixModel model{epsilon, r.polarization_delta};
  const auto dir = prepare_output(r, options);
  Manifest manifest("polarization", scenario);
  manifest.set_inputs(inputs_json(r));
  auto& res = manifest.results();
  context_results(res, r);
  res["epsilon"] = epsilon;
  res["delay_fs"] = tau0;
  res["purity"] = purity(model);
  res["delta_deg"] = rad_to_deg(model.delta);
  report << "epsilon = " << fmt("%.5f", epsilon) << ", purity = " << fmt("%.5f", purity(model)) << "\n";

  const std::vector<double>& thetas = options.theta_a.empty() ? r.theta_a : options.theta_a;
  constexpr std::size_t kCurvePoints = 361;
  DataTable t = curve_table(hex64(scenario.hash()));
  t.add_header("epsilon", format_double(epsilon));
  t.add_header("delta_deg", format_double(rad_to_deg(model.delta)));
  nlohmann::json curves = nlohmann::json::array();
  for (std::size_t j = 0; j < thetas.size(); ++j) {
    const Curve c = polarizer_curve(model, thetas[j], kCurvePoints);
    if (j == 0) {
      std::vector<double> deg(c.x.size());
      for (std::size_t k = 0; k < deg.size(); ++k) deg[k] = rad_to_deg(c.x[k]);
      t.add_column("theta_b_deg", deg);
    }
    t.add_column("rate_theta_a_" + fmt("%g", rad_to_deg(thetas[j])), c.y);
    const double v = curve_visibility(model, thetas[j]);
    curves.push_back({{"theta_a_deg", rad_to_deg(thetas[j])}, {"visibility", v}});
    report << "theta_a = " << fmt("%g", rad_to_deg(thetas[j])) << " deg: visibility = " << fmt("%.5f", v)
           << "\n";
  }
  res["curves"] = curves;
  emit(manifest, dir, "polarization.txt", t.render());
  manifest.write(dir);
  return manifest.json();
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Type-II SPDC with a pulse-front-tilted pump"};
  app.require_subcommand(1);
  std::string scenario_path;
  std::string out_dir;
  std::size_t grid_points = 0;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::vector<double> theta_a_deg;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--scenario", scenario_path, "scenario file or manifest.json")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--grid-points", grid_points, "grid points per axis");
    sub->add_option("--seed", seed, "reserved, results are deterministic");
    sub->add_option("--format", format, "jsi output format")
        ->check(CLI::IsMember({"text", "binary"}));
  };
  auto* tilt = app.add_subcommand("tilt-solve", "tilt angles, effective waves, grating designs");
  auto* jsi = app.add_subcommand("jsi", "joint spectrum, marginals, correlation measures");
  auto* hom = app.add_subcommand("hom", "Hong-Ou-Mandel coincidence trace");
  auto* cw = app.add_subcommand("cw-spectrum", "CW-pump signal spectrum against closed forms");
  auto* pol = app.add_subcommand("polarization", "polarizer-angle coincidence curves");
  for (auto* sub : {tilt, jsi, hom, cw, pol}) common(sub);
  pol->add_option("--theta-a", theta_a_deg, "polarizer A angles in degrees")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    RunOptions options;
    if (!out_dir.empty()) options.out_dir = out_dir;
    if (grid_points) options.grid_points = grid_points;
    for (auto* sub : app.get_subcommands()) {
      if (sub->count("--seed")) options.seed = seed;
    }
    options.format = format == "binary" ? DataFormat::kBinary : DataFormat::kText;
    for (double d : theta_a_deg) options.theta_a.push_back(deg_to_rad(d));
    ScenarioFile scenario = ScenarioFile::load_any(scenario_path);
    // Recorded in the manifest so a rerun from it reproduces this run.
    if (grid_points) scenario.set("grid.points", std::to_string(grid_points));
    if (tilt->parsed()) cmd_tilt_solve(scenario, options, out);
    if (jsi->parsed()) cmd_jsi(scenario, options, out);
    if (hom->parsed()) cmd_hom(scenario, options, out);
    if (cw->parsed()) cmd_cw_spectrum(scenario, options, out);
    if (pol->parsed()) cmd_polarization(scenario, options, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e);
  }
  return 0;
}

}  // namespace tiltspdc::app
