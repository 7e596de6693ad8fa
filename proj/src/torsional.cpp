#include "driveshaft/torsional.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace driveshaft {

double torsional_mode_coefficient(double j_gear, double j_rotor,
                                  double j_shaft, int n) {
  if (j_gear <= 0 || j_rotor <= 0 || j_shaft <= 0 || n < 1) {
    throw std::invalid_argument("torsional system needs positive inertias");
  }
  constexpr double pi = std::numbers::pi;
  if (n == 1) {
    return std::numbers::sqrt2 *
           std::sqrt((j_gear * j_shaft + j_rotor * j_shaft +
                      j_shaft * j_shaft) /
                     (j_gear * j_shaft + j_rotor * j_shaft +
                      2.0 * j_gear * j_rotor));
  }
  const double m = static_cast<double>(n - 1);
  return m * pi / 2.0 + std::sqrt(m * m * pi * pi / 4.0 +
                                  j_shaft / j_rotor + j_shaft / j_gear);
}

std::vector<double> torsional_frequencies(const TorsionalSystem& sys,
                                          int n_max) {
  if (sys.length <= 0 || sys.g_shear <= 0 || sys.rho <= 0 || n_max < 1) {
    throw std::invalid_argument("torsional system needs positive l, G, rho");
  }
  const double wave_speed = std::sqrt(sys.g_shear / sys.rho);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const double upsilon =
        torsional_mode_coefficient(sys.j_gear, sys.j_rotor, sys.j_shaft, n);
    out.push_back(upsilon / sys.length * wave_speed);
  }
  return out;
}

}  // namespace driveshaft
