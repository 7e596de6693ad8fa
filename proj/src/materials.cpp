#include "driveshaft/materials.hpp"

#include <algorithm>
#include <stdexcept>

namespace driveshaft {

namespace {

PlyMaterial make(const char* name, double rho, double e11, double e22,
                 double g12, double nu12, double xt, double xc, double yt,
                 double yc, double s12, double t_ply) {
  PlyMaterial m;
  m.name = name;
  m.rho = rho;
  m.e11 = e11;
  m.e22 = e22;
  m.g12 = g12;
  m.nu12 = nu12;
  m.xt = xt;
  m.xc = xc;
  m.yt = yt;
  m.yc = yc;
  m.s12 = s12;
  m.t_ply = t_ply;
  return m;
}

std::vector<PlyMaterial> builtins() {
  // Ply properties at 0.6 fiber volume fraction. CE_L has no published ply
  // thickness; the 0.125 mm value common to the carbon entries is used.
  return {
      make("BE", 1965.0, 211e9, 24.1e9, 6.89e9, 0.36, 1365e6, 1586e6, 45e6,
           213e6, 62e6, 0.1321e-3),
      make("CE_L", 1680.0, 181e9, 10.3e9, 7.17e9, 0.28, 1500e6, 1500e6, 40e6,
           246e6, 68e6, 0.125e-3),
      make("HM", 1700.0, 370e9, 5.4e9, 4.0e9, 0.30, 1500e6, 470e6, 35e6,
           200e6, 75e6, 0.125e-3),
      make("HS", 1530.0, 162e9, 10e9, 5.0e9, 0.30, 2940e6, 1570e6, 60e6,
           290e6, 100e6, 0.125e-3),
      make("CF", 1600.0, 134e9, 8.5e9, 4.6e9, 0.29, 1500e6, 1500e6, 40e6,
           246e6, 68e6, 1.067e-3 / 8.0),
  };
}

}  // namespace

void validate_material(const PlyMaterial& m) {
  auto bad = [&](const std::string& why) {
    throw std::invalid_argument("material '" + m.name + "': " + why);
  };
  if (m.rho <= 0 || m.e11 <= 0 || m.e22 <= 0 || m.g12 <= 0) {
    bad("moduli and density must be positive");
  }
  if (m.xt <= 0 || m.xc <= 0 || m.yt <= 0 || m.yc <= 0 || m.s12 <= 0) {
    bad("strengths must be positive");
  }
  if (m.t_ply <= 0) bad("ply thickness must be positive");
  if (m.nu12 <= 0 || m.nu12 >= 0.5) bad("nu12 must lie in (0, 0.5)");
  if (m.nu12 * m.nu12 * m.e22 / m.e11 >= 1.0) {
    bad("nu12^2 E22/E11 >= 1 violates thermodynamic admissibility");
  }
  for (double eta : {m.eta11, m.eta22, m.eta66}) {
    if (eta < 0 || eta > 0.2) bad("loss factors must lie in [0, 0.2]");
  }
}

MaterialCatalog::MaterialCatalog() : items_(builtins()) {}

void MaterialCatalog::add(PlyMaterial m) {
  validate_material(m);
  auto it = std::find_if(items_.begin(), items_.end(),
                         [&](const PlyMaterial& x) { return x.name == m.name; });
  if (it != items_.end()) {
    *it = std::move(m);
  } else {
    items_.push_back(std::move(m));
  }
}

const PlyMaterial* MaterialCatalog::find(std::string_view name) const {
  for (const PlyMaterial& m : items_) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

std::vector<std::string> MaterialCatalog::names() const {
  std::vector<std::string> out;
  out.reserve(items_.size());
  for (const PlyMaterial& m : items_) out.push_back(m.name);
  return out;
}

StackingSequence expand(const std::vector<PlyGroup>& groups,
                        const MaterialCatalog& catalog) {
  StackingSequence seq;
  for (const PlyGroup& g : groups) {
    if (g.count < 1) {
      throw std::invalid_argument("ply group count must be >= 1");
    }
    const PlyMaterial* m = catalog.find(g.material);
    if (m == nullptr) {
      throw std::invalid_argument("unknown material '" + g.material + "'");
    }
    for (int i = 0; i < g.count; ++i) seq.push_back(Ply{g.angle_deg, *m});
  }
  return seq;
}

double sequence_thickness(const StackingSequence& seq) {
  double t = 0.0;
  for (const Ply& p : seq) t += p.material.t_ply;
  return t;
}

}  // namespace driveshaft
