#pragma once

#include <vector>

namespace driveshaft {

/// Torsional chain: gearbox inertia, shaft member, tail-rotor inertia.
struct TorsionalSystem {
  double j_gear = 0.0;   // J_G, kg m^2
  double j_rotor = 0.0;  // J_T, kg m^2
  double j_shaft = 0.0;  // J_s, kg m^2, distributed member inertia
  double length = 0.0;   // torsional member length, m
  double g_shear = 0.0;  // homogenized shear modulus, Pa
  double rho = 0.0;      // homogenized density, kg/m^3
};

/// Dimensionless wavenumber upsilon_n of mode n: the n = 1 closed form and
/// the shifted square-root approximation for n >= 2.
double torsional_mode_coefficient(double j_gear, double j_rotor,
                                  double j_shaft, int n);

/// Natural frequencies omega_n = (upsilon_n / l) sqrt(G / rho), rad/s,
/// for n = 1..n_max.
std::vector<double> torsional_frequencies(const TorsionalSystem& sys,
                                          int n_max);

}  // namespace driveshaft
