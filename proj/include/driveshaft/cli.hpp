#pragma once

#include <iosfwd>
#include <string>

#include "driveshaft/config.hpp"

namespace driveshaft {

/// Exit codes shared by the command implementations.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation or constraint failure
inline constexpr int kExitConfigError = 2;

/// Full single-design report: homogenized constants, section properties,
/// critical speeds, stability, torsional modes, torque capacities, masses.
/// Also writes analyze.csv under out_dir when non-empty.
int cmd_analyze(const ScenarioConfig& config, std::ostream& out,
                const std::string& out_dir = "");

/// Runs the configured GA scenario; writes history.csv and best_design.ini
/// under out_dir when non-empty, prints the decoded best design.
int cmd_optimize(const ScenarioConfig& config, std::ostream& out,
                 const std::string& out_dir = "",
                 std::uint64_t seed_override = 0, bool has_seed = false,
                 int threads_override = 0);

/// Runs a fixture family and prints the comparison table.
int cmd_validate(const std::string& selector, std::ostream& out);

}  // namespace driveshaft
