#pragma once

#include <string>
#include <vector>

namespace driveshaft {

/// One published reference value checked against this implementation.
struct FixtureResult {
  std::string id;
  double expected = 0.0;
  double computed = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Values this implementation reproduces gate the validation exit status;
  /// reference-only rows document known source-data mismatches and never
  /// gate (their pass flag still reports the comparison honestly).
  bool blocking = true;
  std::string note;
};

struct ValidationReport {
  std::vector<FixtureResult> results;
  bool all_blocking_pass = true;
};

/// Runs one fixture family. Selectors: rig, table2, table3, table4, table5,
/// pvc, mass, torsion, stability, all. Throws std::invalid_argument
/// otherwise.
ValidationReport run_validation(const std::string& selector);

}  // namespace driveshaft
