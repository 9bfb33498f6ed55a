#include "tiltspdc/app/output.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>

#include "tiltspdc/app/scenario.hpp"
#include "tiltspdc/errors.hpp"

namespace tiltspdc::app {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

void DataTable::add_column(std::string name, std::vector<double> values) {
  if (!data.empty() && values.size() != data.front().size()) {
    throw ValidationError("column " + name + " has a different length");
  }
  columns.push_back(std::move(name));
  data.push_back(std::move(values));
}

std::string DataTable::render() const {
  std::string out;
  for (const auto& [k, v] : header) out += "# " + k + ": " + v + "\n";
  out += "#";
  for (const auto& c : columns) out += " " + c;
  out += "\n";
  const std::size_t rows = data.empty() ? 0 : data.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < data.size(); ++c) {
      if (c) out += ' ';
      out += format_double(data[c][r]);
    }
    out += '\n';
  }
  return out;
}

std::uint64_t write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ValidationError("write failed: " + path.string());
  return fnv1a64(bytes);
}

std::string render_jsa(const JointSpectrum& js, DataFormat format, const std::string& scenario_hash) {
  const auto& g = js.grid;
  char meta[512];
  std::snprintf(meta, sizeof meta,
                "n_signal=%zu n_idler=%zu span_signal=%.12e span_idler=%.12e omega_s0=%.12e "
                "omega_i0=%.12e scenario_hash=%s",
                g.signal.n_points, g.idler.n_points, g.signal.span, g.idler.span, g.omega_s0,
                g.omega_i0, scenario_hash.c_str());
  if (format == DataFormat::kBinary) {
    static_assert(std::endian::native == std::endian::little, "binary output assumes little endian");
    std::string out = std::string("tiltspdc-jsa-v1 ") + meta + "\n";
    const std::size_t header = out.size();
    out.resize(header + js.amplitude.size() * 2 * sizeof(double));
    std::memcpy(out.data() + header, js.amplitude.data(), js.amplitude.size() * 2 * sizeof(double));
    return out;
  }
  std::string out = std::string("# ") + meta + "\n# omega_s omega_i intensity re im\n";
  const auto ds = g.signal.detunings();
  const auto di = g.idler.detunings();
  char line[160];
  for (std::size_t a = 0; a < js.rows(); ++a) {
    for (std::size_t b = 0; b < js.cols(); ++b) {
      const auto psi = js.at(a, b);
      std::snprintf(line, sizeof line, "%.12e %.12e %.12e %.12e %.12e\n", ds[a], di[b],
                    std::norm(psi), psi.real(), psi.imag());
      out += line;
    }
  }
  return out;
}

Manifest::Manifest(std::string command, const ScenarioFile& scenario) {
  json_["tool"] = "tiltspdc";
  json_["version"] = kVersion;
  json_["command"] = std::move(command);
  json_["scenario"] = nlohmann::json::object();
  for (const auto& [k, v] : scenario.entries()) json_["scenario"][k] = v;
  if (!scenario.base_dir.empty()) {
    json_["scenario_base_dir"] = std::filesystem::absolute(scenario.base_dir).string();
  }
  json_["scenario_hash"] = hex64(scenario.hash());
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  json_["timestamp"] = stamp;
  json_["files"] = nlohmann::json::object();
  json_["results"] = nlohmann::json::object();
}

void Manifest::add_file(const std::filesystem::path& path, std::uint64_t hash) {
  json_["files"][path.filename().string()] = hex64(hash);
}

std::uint64_t Manifest::write(const std::filesystem::path& dir) const {
  return write_file(dir / "manifest.json", json_.dump(2) + "\n");
}

}  // namespace tiltspdc::app
