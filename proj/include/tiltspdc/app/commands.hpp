#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "json.hpp"
#include "tiltspdc/app/output.hpp"
#include "tiltspdc/app/scenario.hpp"

namespace tiltspdc::app {

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;  // overrides the scenario's output key
  std::optional<std::size_t> grid_points;
  std::optional<std::uint64_t> seed;  // reserved; every command is deterministic
  DataFormat format = DataFormat::kText;
  std::vector<double> theta_a;  // rad; overrides polarization.theta_a when non-empty
};

// Each command writes its data files and manifest.json into the output
// directory, prints a short report, and returns the manifest.
nlohmann::json cmd_tilt_solve(const ScenarioFile& scenario, const RunOptions& options, std::ostream& report);
nlohmann::json cmd_jsi(const ScenarioFile& scenario, const RunOptions& options, std::ostream& report);
nlohmann::json cmd_hom(const ScenarioFile& scenario, const RunOptions& options, std::ostream& report);
nlohmann::json cmd_cw_spectrum(const ScenarioFile& scenario, const RunOptions& options, std::ostream& report);
nlohmann::json cmd_polarization(const ScenarioFile& scenario, const RunOptions& options, std::ostream& report);

// Exit codes: 0 ok, 2 invalid input, 3 physics precondition, 4 numerical guard.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace tiltspdc::app
