#pragma once

#include "driveshaft/clt.hpp"

namespace driveshaft {

/// Thin-walled tube between two supports.
struct ShaftGeometry {
  double mean_radius = 0.0;  // wall mid-surface radius, m
  double length = 0.0;       // unsupported span, m
};

/// Thin-wall section constants feeding the beam and torsional models.
struct SectionProperties {
  double area = 0.0;            // S = 2 pi r t, m^2
  double i_transverse = 0.0;    // I_y = pi r^3 t, m^4
  double i_polar = 0.0;         // I_x = 2 I_y, m^4
  double shaft_mass = 0.0;      // m_s = rho S l, kg
  double j_polar_mass = 0.0;    // J_s = m_s r^2, kg m^2
};

/// Mid-surface (thin-wall) section formulas.
/// Throws std::invalid_argument for non-positive radius, length or thickness.
SectionProperties section_properties(const ShaftGeometry& geom,
                                     const HomogenizedShaftMaterial& mat);

}  // namespace driveshaft
