#include "tiltspdc/app/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tiltspdc/app/output.hpp"
#include "tiltspdc/errors.hpp"
#include "tiltspdc/units.hpp"

namespace tiltspdc::app {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "crystal",          "crystal.file",        "crystal.theta",      "length",
      "pump.wavelength",  "pump.fwhm",           "pump.cw",            "pump.waist",
      "pump.phi",         "pump.tilt",           "grating.lines",      "grating.order",
      "grating.theta0",   "filter.shape",        "filter.fwhm",        "filter.center",
      "filter.signal.shape", "filter.signal.fwhm", "filter.signal.center",
      "filter.idler.shape",  "filter.idler.fwhm",  "filter.idler.center",
      "grid.points",      "grid.span",           "hom.tau_min",        "hom.tau_max",
      "hom.points",       "polarization.delta",  "polarization.epsilon",
      "polarization.theta_a", "output",          "include_phase"};
  return keys;
}

std::string canonical_key(const std::string& key) { return key == "L" ? "length" : key; }

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits "3.6nm" into 3.6 and "nm".
std::pair<double, std::string> split_unit(const std::string& value, const std::string& key) {
  const std::string v = trim(value);
  std::size_t used = 0;
  double number = 0.0;
  try {
    number = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ValidationError(key + ": expected a number with unit, got '" + value + "'");
  }
  return {number, trim(v.substr(used))};
}

[[noreturn]] void bad_unit(const std::string& key, const std::string& unit, const char* allowed) {
  if (unit.empty()) throw ValidationError(key + ": missing unit (use " + allowed + ")");
  throw ValidationError(key + ": unknown unit '" + unit + "' (use " + allowed + ")");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

ScenarioFile ScenarioFile::parse(std::istream& in, const std::string& origin) {
  ScenarioFile file;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(origin + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = canonical_key(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (file.has(key)) {
      throw ValidationError(origin + ":" + std::to_string(line_no) + ": duplicate key '" + key +
                            "'");
    }
    file.set(key, value);
  }
  return file;
}

ScenarioFile ScenarioFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario " + path.string());
  ScenarioFile f = parse(in, path.string());
  f.base_dir = path.parent_path();
  return f;
}

ScenarioFile ScenarioFile::load_any(const std::filesystem::path& path) {
  if (path.extension() != ".json") return load(path);
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open manifest " + path.string());
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("manifest " + path.string() + ": " + e.what());
  }
  if (!manifest.contains("scenario") || !manifest["scenario"].is_object()) {
    throw ValidationError("manifest " + path.string() + " has no scenario block");
  }
  ScenarioFile f;
  for (const auto& [key, value] : manifest["scenario"].items()) f.set(key, value.get<std::string>());
  if (manifest.contains("scenario_base_dir")) {
    f.base_dir = manifest["scenario_base_dir"].get<std::string>();
  }
  return f;
}

std::optional<std::string> ScenarioFile::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ScenarioFile::set(const std::string& raw_key, const std::string& value) {
  const std::string key = canonical_key(raw_key);
  if (!known_keys().count(key)) throw ValidationError("unknown scenario key '" + key + "'");
  entries_[key] = value;
}

std::string ScenarioFile::canonical_text() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    if (k == "output") continue;  // where results go does not change them
    out += k + " = " + v + "\n";
  }
  return out;
}

std::uint64_t ScenarioFile::hash() const { return fnv1a64(canonical_text()); }

double parse_length(const std::string& value, const std::string& key) {
  if (trim(value) == "inf") return std::numeric_limits<double>::infinity();
  const auto [x, unit] = split_unit(value, key);
  if (unit == "nm") return x * 1e-3;
  if (unit == "um") return x;
  if (unit == "mm") return x * 1e3;
  if (unit == "m") return x * 1e6;
  bad_unit(key, unit, "nm, um, mm, m");
}

double parse_angle(const std::string& value, const std::string& key) {
  const auto [x, unit] = split_unit(value, key);
  if (unit == "deg") return deg_to_rad(x);
  if (unit == "rad") return x;
  bad_unit(key, unit, "deg, rad");
}

double parse_angular_frequency(const std::string& value, const std::string& key) {
  const auto [x, unit] = split_unit(value, key);
  if (unit == "rad/fs") return x;
  if (unit == "rad/ps") return x * 1e-3;
  bad_unit(key, unit, "rad/fs, rad/ps");
}

double parse_time(const std::string& value, const std::string& key) {
  const auto [x, unit] = split_unit(value, key);
  if (unit == "fs") return x;
  if (unit == "ps") return x * 1e3;
  bad_unit(key, unit, "fs, ps");
}

double parse_groove_density(const std::string& value, const std::string& key) {
  const auto [x, unit] = split_unit(value, key);
  if (unit == "/mm" || unit == "lines/mm") return x;
  if (unit == "/um" || unit == "lines/um") return x * 1e3;
  bad_unit(key, unit, "lines/mm, /mm");
}

long parse_integer(const std::string& value, const std::string& key) {
  const std::string v = trim(value);
  std::size_t used = 0;
  long x = 0;
  try {
    x = std::stol(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw ValidationError(key + ": expected an integer");
  return x;
}

double parse_number(const std::string& value, const std::string& key) {
  const auto [x, unit] = split_unit(value, key);
  if (!unit.empty()) throw ValidationError(key + ": expected a plain number");
  return x;
}

bool parse_bool(const std::string& value, const std::string& key) {
  const std::string v = trim(value);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ValidationError(key + ": expected true or false");
}

const char* to_string(TiltSource source) {
  switch (source) {
    case TiltSource::kExplicit:
      return "explicit";
    case TiltSource::kGrating:
      return "grating";
    case TiltSource::kAnticorrelation:
      return "anticorrelation";
    case TiltSource::kCorrelation:
      return "correlation";
  }
  return "?";
}

namespace {

FilterSpec parse_filter(const ScenarioFile& s, const std::string& arm) {
  const auto lookup = [&](const std::string& field) {
    if (auto v = s.get("filter." + arm + "." + field)) return v;
    return s.get("filter." + field);
  };
  FilterSpec f;
  const std::string prefix = "filter." + arm;
  if (auto shape = lookup("shape")) {
    if (*shape == "none") {
      f.shape = FilterSpec::Shape::kNone;
    } else if (*shape == "gaussian") {
      f.shape = FilterSpec::Shape::kGaussian;
    } else if (*shape == "rectangular") {
      f.shape = FilterSpec::Shape::kRectangular;
    } else {
      throw ValidationError(prefix + ".shape: expected none, gaussian or rectangular");
    }
  }
  if (auto fw = lookup("fwhm")) f.fwhm = parse_length(*fw, prefix + ".fwhm");
  if (auto c = lookup("center")) f.center = parse_length(*c, prefix + ".center");
  if (f.shape != FilterSpec::Shape::kNone && !(f.fwhm > 0.0)) {
    throw ValidationError(prefix + ".fwhm must be positive");
  }
  return f;
}

void require_positive(double v, const std::string& key) {
  if (!(v > 0.0)) throw ValidationError(key + " must be positive");
}

}  // namespace

ResolvedScenario resolve(const ScenarioFile& s, std::optional<std::size_t> grid_points) {
  ResolvedScenario r;
  ScenarioConfig& cfg = r.config;

  const std::string crystal_name = s.get("crystal").value_or("BBO");
  std::filesystem::path crystal_file = default_crystal_file();
  if (auto f = s.get("crystal.file")) {
    crystal_file = std::filesystem::path(*f);
    if (crystal_file.is_relative()) crystal_file = s.base_dir / crystal_file;
  }
  cfg.crystal = find_crystal(load_crystal_file(crystal_file), crystal_name);
  if (auto t = s.get("crystal.theta"); t && *t != "auto") {
    cfg.theta = parse_angle(*t, "crystal.theta");
  }

  const auto length = s.get("length");
  if (!length) throw ValidationError("scenario needs 'length' (crystal length with unit)");
  cfg.length = parse_length(*length, "length");
  require_positive(cfg.length, "length");

  auto& pump = cfg.pump;
  if (auto v = s.get("pump.wavelength")) pump.lambda_p = parse_length(*v, "pump.wavelength");
  require_positive(pump.lambda_p, "pump.wavelength");
  const bool cw = s.get("pump.cw") ? parse_bool(*s.get("pump.cw"), "pump.cw") : false;
  if (cw && s.has("pump.fwhm")) throw ValidationError("pump.cw and pump.fwhm are exclusive");
  if (!cw) {
    const auto fw = s.get("pump.fwhm");
    if (!fw) throw ValidationError("scenario needs pump.fwhm or pump.cw = true");
    pump.bandwidth_fwhm = parse_length(*fw, "pump.fwhm");
    require_positive(*pump.bandwidth_fwhm, "pump.fwhm");
  }
  if (auto w = s.get("pump.waist")) pump.waist = parse_length(*w, "pump.waist");
  require_positive(pump.waist, "pump.waist");

  cfg.filter_signal = parse_filter(s, "signal");
  cfg.filter_idler = parse_filter(s, "idler");

  std::size_t points = 512;
  if (auto p = s.get("grid.points")) {
    const long n = parse_integer(*p, "grid.points");
    if (n <= 0) throw ValidationError("grid.points must be positive");
    points = static_cast<std::size_t>(n);
  }
  if (grid_points) points = *grid_points;
  double span = 0.15;
  if (auto sp = s.get("grid.span")) span = parse_angular_frequency(*sp, "grid.span");
  require_positive(span, "grid.span");
  cfg.grid = FrequencyGrid::square(points, span);
  if (auto v = s.get("include_phase")) cfg.include_phase = parse_bool(*v, "include_phase");

  // Tilt: exactly one of pump.phi, a grating block, or a solve directive.
  const bool has_phi = s.has("pump.phi");
  const bool has_grating = s.has("grating.lines") || s.has("grating.order") ||
                           s.has("grating.theta0");
  const bool has_directive = s.has("pump.tilt");
  if (int(has_phi) + int(has_grating) + int(has_directive) != 1) {
    throw ValidationError(
        "scenario needs exactly one of pump.phi, a grating block, or pump.tilt");
  }
  const double theta =
      cfg.theta ? *cfg.theta : phase_matching_angle(cfg.crystal, pump.lambda_p);
  const Type2Waves waves = type2_waves(cfg.crystal, pump.lambda_p, theta);
  if (has_phi) {
    pump.phi = parse_angle(*s.get("pump.phi"), "pump.phi");
    r.tilt_source = TiltSource::kExplicit;
  } else if (has_grating) {
    if (!s.has("grating.lines") || !s.has("grating.order") || !s.has("grating.theta0")) {
      throw ValidationError("grating block needs grating.lines, grating.order, grating.theta0");
    }
    const double lines = parse_groove_density(*s.get("grating.lines"), "grating.lines");
    require_positive(lines, "grating.lines");
    const int order = static_cast<int>(parse_integer(*s.get("grating.order"), "grating.order"));
    const std::string t0 = *s.get("grating.theta0");
    GratingSpec g = t0 == "littrow" ? littrow_grating(lines, order, pump.lambda_p)
                                    : GratingSpec{lines, order, parse_angle(t0, "grating.theta0"),
                                                  std::nullopt};
    const PulseFrontTilt tilt = tilt_from_grating(g, pump.lambda_p);
    g.beta0 = diffraction_angle(g, pump.lambda_p);
    pump.phi = tilt.phi;
    pump.alpha = tilt.alpha;
    r.grating = g;
    r.tilt_source = TiltSource::kGrating;
  } else {
    const std::string d = *s.get("pump.tilt");
    if (d == "anticorrelation") {
      pump.phi = solve_tilt_anticorrelation(waves.signal, waves.idler);
      r.tilt_source = TiltSource::kAnticorrelation;
    } else if (d == "correlation") {
      pump.phi = solve_tilt_correlation(waves.pump, waves.signal, waves.idler);
      r.tilt_source = TiltSource::kCorrelation;
    } else {
      throw ValidationError("pump.tilt: expected anticorrelation or correlation");
    }
  }
  cfg.theta = theta;
  cfg.validate();
  r.context = resolve_context(cfg);

  if (s.has("hom.tau_min") || s.has("hom.tau_max")) {
    if (!s.has("hom.tau_min") || !s.has("hom.tau_max")) {
      throw ValidationError("hom.tau_min and hom.tau_max go together");
    }
    DelayWindow w;
    w.min = parse_time(*s.get("hom.tau_min"), "hom.tau_min");
    w.max = parse_time(*s.get("hom.tau_max"), "hom.tau_max");
    if (auto p = s.get("hom.points")) w.points = static_cast<std::size_t>(parse_integer(*p, "hom.points"));
    r.delay_window = w;
  }
  if (auto d = s.get("polarization.delta")) r.polarization_delta = parse_angle(*d, "polarization.delta");
  if (auto e = s.get("polarization.epsilon")) {
    r.polarization_epsilon = parse_number(*e, "polarization.epsilon");
  }
  if (auto ta = s.get("polarization.theta_a")) {
    for (const auto& item : split_list(*ta)) r.theta_a.push_back(parse_angle(item, "polarization.theta_a"));
  } else {
    r.theta_a = {deg_to_rad(-45.0)};
  }
  r.output_dir = s.get("output").value_or(".");
  if (r.output_dir.is_relative() && s.has("output")) r.output_dir = s.base_dir / r.output_dir;
  return r;
}

}  // namespace tiltspdc::app
