#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tiltspdc/biphoton.hpp"

namespace tiltspdc::app {

inline constexpr const char* kVersion = "0.1.0";

class ScenarioFile;

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

enum class DataFormat { kText, kBinary };

// Column data file: '#' header lines (key: value), a '#' column line, then
// whitespace-separated rows.
struct DataTable {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // one vector per column

  void add_header(std::string key, std::string value) {
    header.emplace_back(std::move(key), std::move(value));
  }
  void add_column(std::string name, std::vector<double> values);
  std::string render() const;
};

std::string format_double(double x);

// Writes the file and returns its FNV-1a hash.
std::uint64_t write_file(const std::filesystem::path& path, const std::string& bytes);

// JSI on the grid: text (omega_s omega_i intensity re im) or binary (one
// '\n'-terminated ASCII header line, then n_s * n_i pairs of little-endian
// doubles re, im, signal index major).
std::string render_jsa(const JointSpectrum& js, DataFormat format, const std::string& scenario_hash);

class Manifest {
 public:
  Manifest(std::string command, const ScenarioFile& scenario);

  void add_file(const std::filesystem::path& path, std::uint64_t hash);
  void set_inputs(nlohmann::json inputs) { json_["inputs"] = std::move(inputs); }
  nlohmann::json& results() { return json_["results"]; }
  const nlohmann::json& json() const { return json_; }
  std::uint64_t write(const std::filesystem::path& dir) const;

 private:
  nlohmann::json json_;
};

}  // namespace tiltspdc::app
