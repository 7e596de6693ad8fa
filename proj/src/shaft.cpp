#include "driveshaft/shaft.hpp"

#include <numbers>
#include <stdexcept>

namespace driveshaft {

SectionProperties section_properties(const ShaftGeometry& geom,
                                     const HomogenizedShaftMaterial& mat) {
  if (geom.mean_radius <= 0 || geom.length <= 0 || mat.thickness <= 0) {
    throw std::invalid_argument("section needs positive radius, length, t");
  }
  constexpr double pi = std::numbers::pi;
  SectionProperties s;
  s.area = 2.0 * pi * geom.mean_radius * mat.thickness;
  s.i_transverse =
      pi * geom.mean_radius * geom.mean_radius * geom.mean_radius *
      mat.thickness;
  s.i_polar = 2.0 * s.i_transverse;
  s.shaft_mass = mat.rho * s.area * geom.length;
  s.j_polar_mass = s.shaft_mass * geom.mean_radius * geom.mean_radius;
  return s;
}

}  // namespace driveshaft
