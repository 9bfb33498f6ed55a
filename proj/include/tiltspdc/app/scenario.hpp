#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tiltspdc/biphoton.hpp"
#include "tiltspdc/hom.hpp"
#include "tiltspdc/tilt.hpp"

namespace tiltspdc::app {

// Flat key = value scenario with unit suffixes (L = 2mm, pump.fwhm = 3.6nm).
// Keys are documented in docs/scenario-format.md.
class ScenarioFile {
 public:
  static ScenarioFile parse(std::istream& in, const std::string& origin = "<scenario>");
  static ScenarioFile load(const std::filesystem::path& path);
  // Accepts either a scenario file or a run manifest (JSON) written by a
  // previous run.
  static ScenarioFile load_any(const std::filesystem::path& path);

  std::optional<std::string> get(const std::string& key) const;
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  void set(const std::string& key, const std::string& value);
  void erase(const std::string& key) { entries_.erase(key); }

  const std::map<std::string, std::string>& entries() const { return entries_; }
  std::string canonical_text() const;
  std::uint64_t hash() const;

  // Directory relative paths in the file resolve against.
  std::filesystem::path base_dir;

 private:
  std::map<std::string, std::string> entries_;
};

// Unit-suffixed values. All return internal units (um, rad, rad/fs, fs).
double parse_length(const std::string& value, const std::string& key);
double parse_angle(const std::string& value, const std::string& key);
double parse_angular_frequency(const std::string& value, const std::string& key);
double parse_time(const std::string& value, const std::string& key);
double parse_groove_density(const std::string& value, const std::string& key);
long parse_integer(const std::string& value, const std::string& key);
double parse_number(const std::string& value, const std::string& key);
bool parse_bool(const std::string& value, const std::string& key);

enum class TiltSource { kExplicit, kGrating, kAnticorrelation, kCorrelation };
const char* to_string(TiltSource source);

struct ResolvedScenario {
  ScenarioConfig config;
  TiltSource tilt_source = TiltSource::kExplicit;
  std::optional<GratingSpec> grating;
  JsaContext context;  // dispersion state at the resolved tilt
  std::optional<DelayWindow> delay_window;
  double polarization_delta = 0.0;
  std::optional<double> polarization_epsilon;
  std::vector<double> theta_a;  // rad
  std::filesystem::path output_dir;
};

ResolvedScenario resolve(const ScenarioFile& scenario,
                         std::optional<std::size_t> grid_points = std::nullopt);

}  // namespace tiltspdc::app
