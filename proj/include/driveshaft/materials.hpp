#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace driveshaft {

/// Orthotropic unidirectional ply: in-plane elastic constants, strengths,
/// hysteretic loss factors and the as-cured ply thickness.
struct PlyMaterial {
  std::string name;
  double rho = 0.0;     // mass density, kg/m^3
  double e11 = 0.0;     // longitudinal Young's modulus, Pa
  double e22 = 0.0;     // transverse Young's modulus, Pa
  double g12 = 0.0;     // in-plane shear modulus, Pa
  double nu12 = 0.0;    // major Poisson ratio
  double xt = 0.0;      // longitudinal tensile strength, Pa
  double xc = 0.0;      // longitudinal compressive strength, Pa (positive)
  double yt = 0.0;      // transverse tensile strength, Pa
  double yc = 0.0;      // transverse compressive strength, Pa (positive)
  double s12 = 0.0;     // in-plane shear strength, Pa
  double t_ply = 0.0;   // ply thickness, m
  double eta11 = 0.0011;  // longitudinal loss factor
  double eta22 = 0.0070;  // transverse loss factor
  double eta66 = 0.0110;  // shear loss factor
};

/// Throws std::invalid_argument when a material violates basic admissibility
/// (non-positive moduli/strengths/thickness, Poisson ratio out of range,
/// thermodynamic bound nu12^2 * E22/E11 >= 1, loss factors outside [0, 0.2]).
void validate_material(const PlyMaterial& m);

/// One physical ply of a laminate wall.
struct Ply {
  double angle_deg = 0.0;  // fiber angle, degrees, in [-90, 90]
  PlyMaterial material;
};

/// Ordered ply list, inner wall surface first.
using StackingSequence = std::vector<Ply>;

/// Grouped ply description, e.g. {90, "HM", 2} for two 90-degree HM plies.
struct PlyGroup {
  double angle_deg = 0.0;
  std::string material;
  int count = 1;
};

/// Mutable material catalog seeded with the built-in entries
/// (BE boron/epoxy, CE_L carbon/epoxy, HM and HS carbon/epoxy, CF carbon/epoxy).
class MaterialCatalog {
 public:
  MaterialCatalog();

  /// Adds a material, replacing any existing entry with the same name.
  void add(PlyMaterial m);

  /// Returns nullptr when the name is unknown.
  const PlyMaterial* find(std::string_view name) const;

  std::vector<std::string> names() const;

 private:
  std::vector<PlyMaterial> items_;
};

/// Expands grouped descriptions into the physical ply list.
/// Throws std::invalid_argument on unknown material names or counts < 1.
StackingSequence expand(const std::vector<PlyGroup>& groups,
                        const MaterialCatalog& catalog);

/// Total laminate wall thickness, m.
double sequence_thickness(const StackingSequence& seq);

}  // namespace driveshaft
