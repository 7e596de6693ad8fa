#include "driveshaft/report.hpp"

#include <cstdio>
#include <numbers>

namespace driveshaft {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

double to_rpm(double rad_per_s) {
  return rad_per_s * 60.0 / (2.0 * std::numbers::pi);
}

double to_rad_s(double rpm) { return rpm * 2.0 * std::numbers::pi / 60.0; }

}  // namespace driveshaft
