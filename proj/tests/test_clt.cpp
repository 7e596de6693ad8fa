/**
 * @file test_clt.cpp
 * @brief Laminate homogenization: reduced stiffnesses, ABD assembly,
 *        engineering constants, equivalent damping and section properties.
 */
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "driveshaft/clt.hpp"
#include "driveshaft/shaft.hpp"

namespace {

using namespace driveshaft;

constexpr double kPi = std::numbers::pi;

StackingSequence make(const MaterialCatalog& cat,
                      const std::vector<PlyGroup>& groups) {
  return expand(groups, cat);
}

StackingSequence zinberg(const MaterialCatalog& cat) {
  return make(cat, {{90, "BE", 1},
                    {45, "BE", 1},
                    {-45, "BE", 1},
                    {0, "BE", 6},
                    {90, "BE", 1}});
}

void expect_rel(double expected, double actual, double tol) {
  EXPECT_NEAR(actual / expected, 1.0, tol)
      << "expected " << expected << " got " << actual;
}

TEST(ReducedStiffness, PlaneStressAmplifiesLongitudinalModulus) {
  const MaterialCatalog cat;
  const PlyMaterial& be = *cat.find("BE");
  const ReducedStiffness q = reduced_stiffness(be);
  // Q11 = E11 / (1 - nu12^2 E22/E11) exceeds E11; Q66 is the shear modulus.
  EXPECT_GT(q.q11, be.e11);
  EXPECT_DOUBLE_EQ(q.q66, be.g12);
  EXPECT_GT(q.q12, 0.0);
  EXPECT_LT(q.q12, q.q22);
}

TEST(ReducedStiffness, RotationIdentityAndNinetyDegreeSwap) {
  const MaterialCatalog cat;
  const PlyMaterial& be = *cat.find("BE");
  const ReducedStiffness q = reduced_stiffness(be);
  const Eigen::Matrix3d q0 = rotated_stiffness(be, 0.0);
  EXPECT_NEAR(q0(0, 0), q.q11, 1e-6 * q.q11);
  EXPECT_NEAR(q0(1, 1), q.q22, 1e-6 * q.q22);
  EXPECT_NEAR(q0(0, 2), 0.0, 1e-3);
  const Eigen::Matrix3d q90 = rotated_stiffness(be, 90.0);
  EXPECT_NEAR(q90(0, 0), q.q22, 1e-9 * q.q22);
  EXPECT_NEAR(q90(1, 1), q.q11, 1e-9 * q.q11);
  // Opposite angles flip only the shear-coupling column.
  const Eigen::Matrix3d qp = rotated_stiffness(be, 45.0);
  const Eigen::Matrix3d qm = rotated_stiffness(be, -45.0);
  EXPECT_NEAR(qp(0, 0), qm(0, 0), 1e-9 * qp(0, 0));
  EXPECT_NEAR(qp(0, 2), -qm(0, 2), 1e-9 * std::abs(qp(0, 2)));
  EXPECT_NEAR(qp(1, 2), -qm(1, 2), 1e-9 * std::abs(qp(1, 2)));
}

TEST(LaminateStiffness, SymmetricStackHasNoCoupling) {
  const MaterialCatalog cat;
  const StackingSequence sym =
      make(cat, {{45, "BE", 1}, {0, "BE", 2}, {45, "BE", 1}});
  const LaminateStiffness lam = build_abd(sym);
  EXPECT_LT(lam.B.norm(), 1e-9 * lam.A.norm() * lam.thickness);
  EXPECT_NEAR((lam.A * lam.a - Eigen::Matrix3d::Identity()).norm(), 0.0,
              1e-12);
  EXPECT_GT(lam.A(0, 0), 0.0);
  EXPECT_GT(lam.D(0, 0), 0.0);
  EXPECT_NEAR(lam.A(0, 1), lam.A(1, 0), 1e-9 * std::abs(lam.A(0, 1)));
}

TEST(LaminateStiffness, MembraneStiffnessScalesWithRepeatCount) {
  const MaterialCatalog cat;
  const StackingSequence once = make(cat, {{30, "HS", 1}, {-30, "HS", 1}});
  const StackingSequence twice = make(
      cat, {{30, "HS", 1}, {-30, "HS", 1}, {30, "HS", 1}, {-30, "HS", 1}});
  const LaminateStiffness a = build_abd(once);
  const LaminateStiffness b = build_abd(twice);
  EXPECT_NEAR(b.thickness, 2.0 * a.thickness, 1e-15);
  EXPECT_NEAR((b.A - 2.0 * a.A).norm(), 0.0, 1e-9 * a.A.norm());
}

TEST(LaminateStiffness, EmptySequenceThrows) {
  EXPECT_THROW(build_abd({}), std::invalid_argument);
}

TEST(Homogenize, UnidirectionalLaminateRecoversPlyConstants) {
  const MaterialCatalog cat;
  const PlyMaterial& hs = *cat.find("HS");
  const HomogenizedShaftMaterial wall = homogenize(make(cat, {{0, "HS", 4}}));
  expect_rel(hs.e11, wall.e_long, 1e-12);
  expect_rel(hs.g12, wall.g_shear, 1e-12);
  expect_rel(hs.nu12, wall.nu, 1e-12);
  expect_rel(hs.rho, wall.rho, 1e-12);
  const double kappa = 2.0 * (1.0 + wall.nu) / (4.0 + 3.0 * wall.nu);
  expect_rel(kappa, wall.kappa, 1e-12);
}

TEST(Homogenize, ZinbergLaminateEngineeringConstants) {
  const MaterialCatalog cat;
  const HomogenizedShaftMaterial wall = homogenize(zinberg(cat));
  expect_rel(1.321e-3, wall.thickness, 1e-12);
  expect_rel(1.428222476e11, wall.e_long, 1e-9);
  expect_rel(1.656298389e10, wall.g_shear, 1e-9);
  expect_rel(0.2577257363, wall.nu, 1e-9);
  expect_rel(0.5269972939, wall.kappa, 1e-9);
  expect_rel(1965.0, wall.rho, 1e-12);
  expect_rel(0.001478642189, wall.eta_i, 1e-9);
}

TEST(Homogenize, HighModulusTwoTubeLaminateConstants) {
  const MaterialCatalog cat;
  const HomogenizedShaftMaterial wall = homogenize(make(cat, {{90, "HM", 1},
                                                              {45, "HM", 1},
                                                              {0, "HM", 2},
                                                              {-45, "HM", 2},
                                                              {0, "HM", 1},
                                                              {45, "HM", 1}}));
  expect_rel(1.0e-3, wall.thickness, 1e-12);
  expect_rel(1.671574872e11, wall.e_long, 1e-9);
  expect_rel(0.001387876666, wall.eta_i, 1e-9);
}

TEST(Damping, UnidirectionalLimitsBracketAngleSweep) {
  const MaterialCatalog cat;
  const PlyMaterial& be = *cat.find("BE");
  // A 0-degree wall dissipates like the fiber direction, a 90-degree wall
  // like the transverse direction.
  expect_rel(be.eta11, homogenize_damping(make(cat, {{0, "BE", 4}})), 1e-6);
  expect_rel(be.eta22, homogenize_damping(make(cat, {{90, "BE", 4}})), 1e-6);
  double lo = 1.0;
  double hi = 0.0;
  for (double angle = 0.0; angle <= 90.0; angle += 15.0) {
    const double eta =
        homogenize_damping(make(cat, {{angle, "BE", 4}}));
    lo = std::min(lo, eta);
    hi = std::max(hi, eta);
    EXPECT_GT(eta, 0.0);
  }
  EXPECT_GE(hi, be.eta22);  // off-axis walls dissipate more than on-axis
  EXPECT_LE(lo, be.eta11 * 1.001);
  EXPECT_LE(hi, be.eta66 * 1.5);
}

TEST(Damping, MixedLaminateSitsBetweenPlyLimits) {
  const MaterialCatalog cat;
  const PlyMaterial& be = *cat.find("BE");
  const double eta = homogenize_damping(zinberg(cat));
  EXPECT_GT(eta, be.eta11);
  EXPECT_LT(eta, be.eta66);
}

TEST(IsotropicWall, MatchesDirectConstants) {
  const HomogenizedShaftMaterial wall =
      isotropic_wall(69e9, 0.33, 2700.0, 2.02e-3);
  EXPECT_DOUBLE_EQ(wall.e_long, 69e9);
  expect_rel(69e9 / (2.0 * 1.33), wall.g_shear, 1e-12);
  EXPECT_DOUBLE_EQ(wall.nu, 0.33);
  expect_rel(2.0 * 1.33 / (4.0 + 3.0 * 0.33), wall.kappa, 1e-12);
  EXPECT_DOUBLE_EQ(wall.eta_i, 0.0);
}

TEST(SectionProperties, ThinWallFormulas) {
  const MaterialCatalog cat;
  const HomogenizedShaftMaterial wall = homogenize(zinberg(cat));
  const ShaftGeometry geom{0.06284, 2.47};
  const SectionProperties s = section_properties(geom, wall);
  const double r = geom.mean_radius;
  const double t = wall.thickness;
  expect_rel(2.0 * kPi * r * t, s.area, 1e-12);
  expect_rel(kPi * r * r * r * t, s.i_transverse, 1e-12);
  expect_rel(2.0 * s.i_transverse, s.i_polar, 1e-12);
  expect_rel(wall.rho * s.area * geom.length, s.shaft_mass, 1e-12);
  expect_rel(s.shaft_mass * r * r, s.j_polar_mass, 1e-12);
}

TEST(SectionProperties, RejectsDegenerateGeometry) {
  const HomogenizedShaftMaterial wall = isotropic_wall(69e9, 0.3, 2700, 1e-3);
  EXPECT_THROW(section_properties({0.0, 1.0}, wall), std::invalid_argument);
  EXPECT_THROW(section_properties({0.05, 0.0}, wall), std::invalid_argument);
}

TEST(Materials, CatalogValidatesAdmissibility) {
  PlyMaterial bad;
  bad.name = "bad";
  bad.rho = 1600;
  bad.e11 = 100e9;
  bad.e22 = 10e9;
  bad.g12 = 5e9;
  bad.nu12 = 3.5;  // violates the thermodynamic bound
  bad.xt = bad.xc = bad.yt = bad.yc = bad.s12 = 1e8;
  bad.t_ply = 1e-4;
  EXPECT_THROW(validate_material(bad), std::invalid_argument);
  bad.nu12 = 0.3;
  EXPECT_NO_THROW(validate_material(bad));
}

TEST(Materials, ExpandRejectsUnknownNamesAndBadCounts) {
  const MaterialCatalog cat;
  EXPECT_THROW(expand({{0, "UNOBTANIUM", 1}}, cat), std::invalid_argument);
  EXPECT_THROW(expand({{0, "BE", 0}}, cat), std::invalid_argument);
  const StackingSequence seq = expand({{0, "BE", 3}}, cat);
  EXPECT_EQ(seq.size(), 3u);
  EXPECT_NEAR(sequence_thickness(seq), 3 * 0.1321e-3, 1e-15);
}

}  // namespace
