/**
 * @file test_rotordynamics.cpp
 * @brief Critical speeds of the tube on elastic supports: closed form versus
 *        the Galerkin oracle, measured rig speeds, and the hysteretic
 *        whirl-stability threshold.
 */
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "driveshaft/report.hpp"
#include "driveshaft/rotordynamics.hpp"

namespace {

using namespace driveshaft;

void expect_rel(double expected, double actual, double tol) {
  ASSERT_NE(expected, 0.0);
  EXPECT_NEAR(actual / expected, 1.0, tol)
      << "expected " << expected << " got " << actual;
}

HomogenizedShaftMaterial rig_wall() {
  return isotropic_wall(69e9, 0.33, 2700.0, 2.02e-3);
}

const ShaftGeometry kRigGeometry{23.99e-3, 1.80};
const SupportProperties kRigSupport{2.817, 5.64e5, 0.0};

TEST(CriticalSpeeds, RigFirstForwardPairMatchesMeasurement) {
  const HomogenizedShaftMaterial wall = rig_wall();
  const SectionProperties section = section_properties(kRigGeometry, wall);
  const auto speeds = critical_speeds(
      modal_parameters(kRigGeometry, section, wall, kRigSupport, 1));
  ASSERT_TRUE(speeds.has_value());
  // Measured 250 and 460 rad/s.
  EXPECT_NEAR(speeds->forward_low / 250.0, 1.0, 0.01);
  EXPECT_NEAR(speeds->forward_high / 460.0, 1.0, 0.01);
  expect_rel(247.917584, speeds->forward_low, 1e-8);
  expect_rel(459.193811, speeds->forward_high, 1e-8);
}

TEST(CriticalSpeeds, ClosedFormMatchesGalerkinOracleOnRandomParameters) {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> ue(50e9, 400e9);
  std::uniform_real_distribution<double> unu(0.25, 0.40);
  std::uniform_real_distribution<double> urho(1300.0, 2800.0);
  std::uniform_real_distribution<double> ut(0.5e-3, 3e-3);
  std::uniform_real_distribution<double> ur(0.02, 0.07);
  std::uniform_real_distribution<double> ul(0.8, 4.0);
  std::uniform_real_distribution<double> umb(1.0, 10.0);
  std::uniform_real_distribution<double> uke(1e4, 1e7);
  std::uniform_int_distribution<int> un(1, 4);
  int compared = 0;
  int draws = 0;
  while (compared < 100 && draws < 2000) {
    ++draws;
    const HomogenizedShaftMaterial wall =
        isotropic_wall(ue(rng), unu(rng), urho(rng), ut(rng));
    const ShaftGeometry geom{ur(rng), ul(rng)};
    const SectionProperties section = section_properties(geom, wall);
    const SupportProperties support{umb(rng), uke(rng), 0.0};
    const int n = un(rng);
    const auto closed =
        critical_speeds(modal_parameters(geom, section, wall, support, n));
    if (!closed) continue;
    const auto oracle = eigen_oracle(geom, section, wall, support, n);
    if (oracle.size() != 2) continue;
    EXPECT_NEAR(closed->forward_low / oracle[0], 1.0, 1e-6);
    EXPECT_NEAR(closed->forward_high / oracle[1], 1.0, 1e-6);
    ++compared;
  }
  EXPECT_GE(compared, 100);
}

TEST(CriticalSpeeds, ForwardBackwardCoincideWithoutRotaryInertia) {
  const HomogenizedShaftMaterial wall = rig_wall();
  SectionProperties section = section_properties(kRigGeometry, wall);
  section.i_polar = 0.0;  // spin coupling enters only through I_x
  const auto speeds = critical_speeds(
      modal_parameters(kRigGeometry, section, wall, kRigSupport, 1));
  ASSERT_TRUE(speeds.has_value());
  expect_rel(speeds->forward_low, -speeds->backward_low, 1e-12);
  expect_rel(speeds->forward_high, -speeds->backward_high, 1e-12);
}

TEST(CriticalSpeeds, BranchOrderingAndBackwardSign) {
  const HomogenizedShaftMaterial wall = rig_wall();
  const SectionProperties section = section_properties(kRigGeometry, wall);
  for (int n = 1; n <= 4; ++n) {
    const auto speeds = critical_speeds(
        modal_parameters(kRigGeometry, section, wall, kRigSupport, n));
    ASSERT_TRUE(speeds.has_value()) << "harmonic " << n;
    EXPECT_GT(speeds->forward_low, 0.0);
    EXPECT_GT(speeds->forward_high, speeds->forward_low);
    EXPECT_LE(speeds->backward_high, 0.0);
    EXPECT_LE(speeds->backward_low, speeds->backward_high);
  }
}

TEST(CriticalSpeeds, PinnedTubeFrequencyScalesWithInverseLengthSquared) {
  const HomogenizedShaftMaterial wall = rig_wall();
  const ShaftGeometry short_geom{0.03, 1.0};
  const ShaftGeometry long_geom{0.03, 2.0};
  const ModalParameters a = modal_parameters(
      short_geom, section_properties(short_geom, wall), wall, kRigSupport, 1);
  const ModalParameters b = modal_parameters(
      long_geom, section_properties(long_geom, wall), wall, kRigSupport, 1);
  expect_rel(a.omega_shaft_sq / 16.0, b.omega_shaft_sq, 1e-12);
}

TEST(CriticalSpeeds, StiffSupportsApproachRigidFirstCritical) {
  const HomogenizedShaftMaterial wall = rig_wall();
  const SectionProperties section = section_properties(kRigGeometry, wall);
  const double rigid = rigid_support_first_critical(
      modal_parameters(kRigGeometry, section, wall, kRigSupport, 1));
  double prev = 0.0;
  for (double ke = 1e5; ke <= 1e11; ke *= 10.0) {
    const SupportProperties support{2.817, ke, 0.0};
    const auto speeds = critical_speeds(
        modal_parameters(kRigGeometry, section, wall, support, 1));
    ASSERT_TRUE(speeds.has_value());
    EXPECT_GE(speeds->forward_low, prev);  // stiffer supports raise the pass
    EXPECT_LE(speeds->forward_low, rigid * (1.0 + 1e-9));
    prev = speeds->forward_low;
  }
  const SupportProperties near_rigid{2.817, 1e16, 0.0};
  const auto speeds = critical_speeds(
      modal_parameters(kRigGeometry, section, wall, near_rigid, 1));
  ASSERT_TRUE(speeds.has_value());
  expect_rel(rigid, speeds->forward_low, 1e-4);
}

TEST(CriticalSpeeds, SupportShareAlternatesWithHarmonicParity) {
  const HomogenizedShaftMaterial wall = rig_wall();
  const SectionProperties section = section_properties(kRigGeometry, wall);
  // Odd harmonics load the supports with m_s/2, even ones with m_s/6, so the
  // rigid support frequency rises from odd to even.
  const ModalParameters n1 =
      modal_parameters(kRigGeometry, section, wall, kRigSupport, 1);
  const ModalParameters n2 =
      modal_parameters(kRigGeometry, section, wall, kRigSupport, 2);
  EXPECT_LT(n1.omega_support_sq, n2.omega_support_sq);
  const double ms = section.shaft_mass;
  expect_rel(kRigSupport.stiffness / (kRigSupport.mass + ms / 2.0),
             n1.omega_support_sq, 1e-12);
  expect_rel(kRigSupport.stiffness / (kRigSupport.mass + ms / 6.0),
             n2.omega_support_sq, 1e-12);
}

HomogenizedShaftMaterial pvc_wall(double eta_i) {
  return isotropic_wall(2.2e9, 0.38, 1350.0, 2.5e-3, eta_i);
}

bool supercritical_passage_open(double length, double eta_i, double eta_e) {
  const HomogenizedShaftMaterial wall = pvc_wall(eta_i);
  const ShaftGeometry geom{23.25e-3, length};
  const SectionProperties section = section_properties(geom, wall);
  const SupportProperties support{2.608, 2.58e5, eta_e};
  const auto speeds =
      critical_speeds(modal_parameters(geom, section, wall, support, 1));
  if (!speeds) return false;
  const StabilityResult stab = stability_threshold(
      geom, section, wall, support, eta_i, eta_e, 4);
  return !stab.threshold || *stab.threshold > speeds->forward_high;
}

TEST(Stability, PolymerRigWindowOfSupercriticalOperation) {
  // Only intermediate lengths leave the instability threshold above the
  // first-harmonic passage.
  EXPECT_FALSE(supercritical_passage_open(0.6, 0.025, 0.10));
  EXPECT_TRUE(supercritical_passage_open(0.8, 0.025, 0.10));
  EXPECT_TRUE(supercritical_passage_open(0.9, 0.025, 0.10));
  EXPECT_FALSE(supercritical_passage_open(1.1, 0.025, 0.10));
}

TEST(Stability, NoInternalDampingMeansStableAtAllSpeeds) {
  for (double length = 0.5; length <= 1.3; length += 0.1) {
    for (double ke = 1e4; ke <= 1e6; ke *= 10.0) {
      const HomogenizedShaftMaterial wall = pvc_wall(0.0);
      const ShaftGeometry geom{23.25e-3, length};
      const SectionProperties section = section_properties(geom, wall);
      const SupportProperties support{2.608, ke, 0.10};
      const StabilityResult stab =
          stability_threshold(geom, section, wall, support, 0.0, 0.10, 4);
      EXPECT_TRUE(stab.stable_at_all_speeds)
          << "l=" << length << " ke=" << ke;
      EXPECT_FALSE(stab.threshold.has_value());
    }
  }
}

TEST(Stability, ThresholdNeverBelowFirstUndampedWhirlSpeed) {
  const HomogenizedShaftMaterial wall = pvc_wall(0.025);
  const ShaftGeometry geom{23.25e-3, 0.9};
  const SectionProperties section = section_properties(geom, wall);
  const SupportProperties support{2.608, 2.58e5, 0.10};
  const StabilityResult stab =
      stability_threshold(geom, section, wall, support, 0.025, 0.10, 4);
  ASSERT_TRUE(stab.threshold.has_value());
  const auto whirl = undamped_whirl_speeds(
      modal_parameters(geom, section, wall, support, 1));
  EXPECT_GE(*stab.threshold, whirl.first * (1.0 - 1e-12));
  for (const BranchDiagnostic& b : stab.branches) {
    if (b.unstable) {
      EXPECT_LE(*stab.threshold, b.omega0 * (1.0 + 1e-12));
    }
  }
}

TEST(Stability, HighModulusTwoTubeColumn) {
  const MaterialCatalog cat;
  const StackingSequence seq = expand({{90, "HM", 1},
                                       {45, "HM", 1},
                                       {0, "HM", 2},
                                       {-45, "HM", 2},
                                       {0, "HM", 1},
                                       {45, "HM", 1}},
                                      cat);
  const HomogenizedShaftMaterial wall = homogenize(seq);
  const ShaftGeometry geom{0.056, 3.705};
  const SectionProperties section = section_properties(geom, wall);
  const SupportProperties support{3.760851727, 2.864285714285714e6, 0.10};
  const double pairs[4][2] = {{2651.439773, 8216.244794},
                              {7727.994530, 11268.899702},
                              {7316.697092, 23890.463114},
                              {7950.402184, 41467.566043}};
  for (int n = 1; n <= 4; ++n) {
    const auto speeds =
        critical_speeds(modal_parameters(geom, section, wall, support, n));
    ASSERT_TRUE(speeds.has_value());
    expect_rel(pairs[n - 1][0], to_rpm(speeds->forward_low), 1e-8);
    expect_rel(pairs[n - 1][1], to_rpm(speeds->forward_high), 1e-8);
  }
  const StabilityResult stab = stability_threshold(
      geom, section, wall, support, wall.eta_i, support.eta_e, 4);
  ASSERT_TRUE(stab.threshold.has_value());
  expect_rel(23659.38315, to_rpm(*stab.threshold), 1e-8);
}

TEST(CriticalSpeeds, ZinbergRigidFirstCritical) {
  const MaterialCatalog cat;
  const StackingSequence seq = expand({{90, "BE", 1},
                                       {45, "BE", 1},
                                       {-45, "BE", 1},
                                       {0, "BE", 6},
                                       {90, "BE", 1}},
                                      cat);
  const HomogenizedShaftMaterial wall = homogenize(seq);
  const ShaftGeometry geom{0.06284, 2.47};
  const SectionProperties section = section_properties(geom, wall);
  const SupportProperties probe{1.0, 1.0, 0.0};
  const double wc1 = rigid_support_first_critical(
      modal_parameters(geom, section, wall, probe, 1));
  expect_rel(5713.641381, to_rpm(wc1), 1e-8);
  // Published 5697 rev/min.
  EXPECT_NEAR(to_rpm(wc1) / 5697.0, 1.0, 0.01);
}

}  // namespace
