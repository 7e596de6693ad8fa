#pragma once

#include <string>
#include <vector>

namespace driveshaft {

/// Fixed float format for all emitted files: 9 significant digits.
std::string fmt9(double v);

/// One CSV line from already-formatted cells.
std::string csv_line(const std::vector<std::string>& cells);

/// rad/s -> rev/min.
double to_rpm(double rad_per_s);
/// rev/min -> rad/s.
double to_rad_s(double rpm);

}  // namespace driveshaft
