/**
 * @file test_mass_constraints.cpp
 * @brief Driveline mass model, full design analysis, constraint vector
 *        assembly and the penalized fitness.
 */
#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "driveshaft/driveline.hpp"
#include "driveshaft/report.hpp"

namespace {

using namespace driveshaft;

void expect_rel(double expected, double actual, double tol) {
  ASSERT_NE(expected, 0.0);
  EXPECT_NEAR(actual / expected, 1.0, tol)
      << "expected " << expected << " got " << actual;
}

constexpr double kPowerW = 447.4e3;

TEST(SupportMass, EmpiricalLawSpotValues) {
  expect_rel(3.69501468, support_mass(kPowerW, 5540, PowerUnit::Horsepower),
             1e-8);
  expect_rel(4.792777018, support_mass(kPowerW, 3800, PowerUnit::Horsepower),
             1e-8);
  expect_rel(4.079260612, support_mass(kPowerW, 4800, PowerUnit::Horsepower),
             1e-8);
  expect_rel(3.760851727, support_mass(kPowerW, 5400, PowerUnit::Horsepower),
             1e-8);
}

TEST(SupportMass, PowerLawRatioIsExact) {
  const double ratio = support_mass(kPowerW, 3800, PowerUnit::Horsepower) /
                       support_mass(kPowerW, 4800, PowerUnit::Horsepower);
  expect_rel(std::pow(4800.0 / 3800.0, 0.69), ratio, 1e-12);
  // The unit convention rescales by the horsepower factor to the 0.69.
  const double units = support_mass(kPowerW, 5000, PowerUnit::Watts) /
                       support_mass(kPowerW, 5000, PowerUnit::Horsepower);
  expect_rel(std::pow(745.7, 0.69), units, 1e-12);
}

TEST(SupportMass, PublishedSupportWeights) {
  EXPECT_NEAR(2 * support_mass(kPowerW, 3800, PowerUnit::Horsepower) / 9.68,
              1.0, 0.02);
  EXPECT_NEAR(2 * support_mass(kPowerW, 4800, PowerUnit::Horsepower) / 8.24,
              1.0, 0.02);
  EXPECT_NEAR(2 * support_mass(kPowerW, 4400, PowerUnit::Horsepower) / 8.75,
              1.0, 0.02);
  EXPECT_NEAR(support_mass(kPowerW, 5400, PowerUnit::Horsepower) / 3.80, 1.0,
              0.02);
}

TEST(SupportMass, RejectsNonPositiveInputs) {
  EXPECT_THROW(support_mass(0.0, 5000, PowerUnit::Horsepower),
               std::invalid_argument);
  EXPECT_THROW(support_mass(kPowerW, 0.0, PowerUnit::Horsepower),
               std::invalid_argument);
}

TEST(DrivelineMass, RecombinesPublishedColumns) {
  // Five aluminium tubes on four supports, no joint penalty.
  DrivelineConfig conv;
  conv.shaft_count = 5;
  conv.weight_penalty_per_shaft = 0.0;
  expect_rel(28.80, driveline_mass(conv, 13.38 / 5.0, 15.42 / 4.0), 1e-12);
  // Three composite tubes, two supports, 1.5 kg of fittings per tube.
  DrivelineConfig zin;
  zin.shaft_count = 3;
  zin.weight_penalty_per_shaft = 1.5;
  expect_rel(20.37, driveline_mass(zin, 8.16 / 3.0, 7.71 / 2.0), 1e-12);
}

ShaftDesign hm_two_tube_design(const MaterialCatalog& cat) {
  ShaftDesign design;
  design.sequence = expand({{90, "HM", 1},
                            {45, "HM", 1},
                            {0, "HM", 2},
                            {-45, "HM", 2},
                            {0, "HM", 1},
                            {45, "HM", 1}},
                           cat);
  design.mean_radius = 0.056;
  design.support_stiffness = 2.864285714285714e6;
  design.omega_rpm = 5400.0;
  return design;
}

DrivelineConfig supercritical_two_tube() {
  DrivelineConfig config;
  config.total_length = 7.41;
  config.shaft_count = 2;
  config.power_w = kPowerW;
  config.j_gear = 0.94;
  config.j_rotor = 3.76;
  config.regime = Regime::Supercritical;
  config.eta_e = 0.10;
  return config;
}

TEST(AnalyzeDesign, HighModulusTwoTubeColumn) {
  const MaterialCatalog cat;
  const ShaftAnalysis a =
      analyze_design(hm_two_tube_design(cat), supercritical_two_tube());
  expect_rel(1.0e-3, a.material.thickness, 1e-12);
  expect_rel(2.216179989, a.shaft_mass_kg, 1e-8);
  expect_rel(791.176906, a.nominal_torque, 1e-8);
  expect_rel(2439.41118, a.strength_torque, 1e-8);
  expect_rel(2073.848189, a.buckling_torque, 1e-7);
  ASSERT_EQ(a.torsional_rpm.size(), 2u);
  expect_rel(1322.495257, a.torsional_rpm[0], 1e-8);
  expect_rel(43326.01433, a.torsional_rpm[1], 1e-8);
  ASSERT_EQ(a.forward_critical_rpm.size(), 4u);
  expect_rel(2651.439773, a.forward_critical_rpm[0].first, 1e-8);
  expect_rel(8216.244794, a.forward_critical_rpm[0].second, 1e-8);
  expect_rel(7950.402184, a.forward_critical_rpm[3].first, 1e-8);
  ASSERT_TRUE(a.threshold_rpm.has_value());
  expect_rel(23659.38315, *a.threshold_rpm, 1e-8);
  expect_rel(3.760851727, a.support_mass_kg, 1e-8);
  // 2 m_s + 1 m_b + 2 * 1.5 kg of fittings.
  expect_rel(2 * a.shaft_mass_kg + a.support_mass_kg + 3.0,
             a.driveline_mass_kg, 1e-12);
}

TEST(Constraints, HighModulusTwoTubeIsFeasible) {
  const MaterialCatalog cat;
  const DrivelineConfig config = supercritical_two_tube();
  const ShaftAnalysis a = analyze_design(hm_two_tube_design(cat), config);
  const ConstraintReport report = evaluate_constraints(a, config, {});
  EXPECT_TRUE(report.feasible);
  const std::vector<std::string> expected_ids = {
      "strength",     "buckling",   "thickness",  "torsional_n1",
      "torsional_n2", "flex_n1_lo", "flex_n1_hi", "flex_n2_lo",
      "flex_n2_hi",   "flex_n3_lo", "flex_n3_hi", "flex_n4_lo",
      "flex_n4_hi",   "stability"};
  ASSERT_EQ(report.values.size(), expected_ids.size());
  for (std::size_t i = 0; i < expected_ids.size(); ++i) {
    EXPECT_EQ(report.values[i].id, expected_ids[i]) << i;
    EXPECT_GE(report.values[i].value, 0.0) << expected_ids[i];
  }
  // Wall sits exactly on the thickness floor.
  EXPECT_NEAR(report.values[2].value, 0.0, 1e-12);
  // All constraints satisfied, so the fitness is the bare mass reciprocal.
  expect_rel(1.0 / a.shaft_mass_kg, fitness(a.shaft_mass_kg, report), 1e-12);
}

TEST(Constraints, SubcriticalColumnDocumentedNearMiss) {
  // The published subcritical optimum runs at 3800 rev/min while its rigid
  // first critical computes to 4617 rev/min: the 0.8 reserve band puts the
  // margin at -2.8%, a known borderline of this parameter set.
  const MaterialCatalog cat;
  ShaftDesign design;
  design.sequence = expand(
      {{90, "BE", 2}, {0, "BE", 4}, {-45, "BE", 1}, {45, "BE", 1}, {90, "BE", 1}},
      cat);
  design.mean_radius = 0.056;
  design.omega_rpm = 3800.0;
  DrivelineConfig config;
  config.total_length = 3 * 2.47;
  config.shaft_count = 3;
  config.power_w = kPowerW;
  config.j_gear = 0.94;
  config.j_rotor = 3.76;
  config.regime = Regime::Subcritical;
  const ShaftAnalysis a = analyze_design(design, config);
  expect_rel(2.030358511, a.shaft_mass_kg, 1e-8);
  expect_rel(4616.939154, a.rigid_first_critical_rpm, 1e-8);
  expect_rel(3718.066412, a.strength_torque, 1e-8);
  expect_rel(2763.409114, a.buckling_torque, 1e-7);
  const ConstraintReport report = evaluate_constraints(a, config, {});
  ASSERT_EQ(report.values.size(), 6u);
  EXPECT_EQ(report.values[5].id, "flex_sub");
  EXPECT_NEAR(report.values[5].value,
              0.8 * 4616.939154 / 3800.0 - 1.0, 1e-6);
  EXPECT_LT(report.values[5].value, 0.0);
  EXPECT_FALSE(report.feasible);
  // The penalty pulls the fitness below the bare reciprocal.
  EXPECT_LT(fitness(a.shaft_mass_kg, report), 1.0 / a.shaft_mass_kg);
}

TEST(Constraints, SubcriticalSetSkipsStability) {
  const MaterialCatalog cat;
  ShaftDesign design;
  design.sequence = expand({{90, "BE", 1},
                            {45, "BE", 1},
                            {-45, "BE", 1},
                            {0, "BE", 6},
                            {90, "BE", 1}},
                           cat);
  design.mean_radius = 0.06284;
  design.omega_rpm = 4320.0;
  DrivelineConfig config;
  config.total_length = 3 * 2.47;
  config.shaft_count = 3;
  config.power_w = kPowerW;
  config.j_gear = 0.94;
  config.j_rotor = 3.76;
  config.regime = Regime::Subcritical;
  const ConstraintReport report =
      evaluate_constraints(analyze_design(design, config), config, {});
  const std::vector<std::string> expected_ids = {
      "strength", "buckling", "thickness",
      "torsional_n1", "torsional_n2", "flex_sub"};
  ASSERT_EQ(report.values.size(), expected_ids.size());
  for (std::size_t i = 0; i < expected_ids.size(); ++i) {
    EXPECT_EQ(report.values[i].id, expected_ids[i]);
  }
  EXPECT_TRUE(report.feasible);
}

TEST(Constraints, SpeedInsideTorsionalBandIsInfeasible) {
  const MaterialCatalog cat;
  ShaftDesign design;
  design.sequence = expand({{90, "BE", 1},
                            {45, "BE", 1},
                            {-45, "BE", 1},
                            {0, "BE", 6},
                            {90, "BE", 1}},
                           cat);
  design.mean_radius = 0.06284;
  DrivelineConfig config;
  config.total_length = 3 * 2.47;
  config.shaft_count = 3;
  config.power_w = kPowerW;
  config.j_gear = 0.94;
  config.j_rotor = 3.76;
  config.regime = Regime::Subcritical;
  // Park the operating speed right on the first torsional mode.
  design.omega_rpm = 4320.0;
  const ShaftAnalysis probe = analyze_design(design, config);
  design.omega_rpm = probe.torsional_rpm[0];
  const ShaftAnalysis a = analyze_design(design, config);
  const ConstraintReport report = evaluate_constraints(a, config, {});
  EXPECT_FALSE(report.feasible);
  EXPECT_LT(report.values[3].value, 0.0);  // torsional_n1
  EXPECT_NEAR(report.values[3].value, -0.15, 0.02);
}

TEST(Constraints, NonFiniteModesAreHardViolations) {
  // Hand-built analysis: the mapping must convert missing closed-form speeds
  // into a fixed -1 violation instead of letting NaN leak through min().
  ShaftAnalysis a;
  a.omega_rpm = 5000.0;
  a.nominal_torque = 800.0;
  a.strength_torque = 5000.0;
  a.buckling_torque = 5000.0;
  a.material.thickness = 2e-3;
  a.shaft_mass_kg = 2.0;
  a.torsional_rpm = {1200.0, 40000.0};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  a.forward_critical_rpm = {{nan, nan}, {9000.0, 50000.0}};
  a.rigid_first_critical_rpm = nan;
  DrivelineConfig config;
  config.shaft_count = 2;
  config.power_w = kPowerW;
  config.regime = Regime::Supercritical;
  config.flexural_harmonics = 2;
  const ConstraintReport report = evaluate_constraints(a, config, {});
  ASSERT_EQ(report.values.size(), 9u);
  EXPECT_EQ(report.values[5].id, "flex_n1_lo");
  EXPECT_EQ(report.values[5].value, -1.0);
  EXPECT_EQ(report.values[6].value, -1.0);
  EXPECT_GT(report.values[7].value, 0.0);
  EXPECT_FALSE(report.feasible);

  config.regime = Regime::Subcritical;
  const ConstraintReport sub = evaluate_constraints(a, config, {});
  EXPECT_EQ(sub.values.back().id, "flex_sub");
  EXPECT_EQ(sub.values.back().value, -1.0);
  EXPECT_FALSE(sub.feasible);
}

TEST(Fitness, PenaltySumMatchesDefinition) {
  ConstraintReport report;
  report.values = {{"strength", 0.4, 2.0},
                   {"buckling", -0.25, 2.0},
                   {"thickness", -0.1, 6.0},
                   {"flex_sub", 0.2, 4.0}};
  report.feasible = false;
  const double mass = 2.5;
  const double expected = 1.0 / mass + 2.0 * (-0.25) + 6.0 * (-0.1);
  expect_rel(expected, fitness(mass, report), 1e-12);
}

TEST(AnalyzeDesign, SingleMemberTorsionalConventionOption) {
  const MaterialCatalog cat;
  ShaftDesign design = hm_two_tube_design(cat);
  DrivelineConfig config = supercritical_two_tube();
  const ShaftAnalysis per_tube = analyze_design(design, config);
  config.torsional_convention = TorsionalConvention::SingleMember;
  const ShaftAnalysis single = analyze_design(design, config);
  // One member of twice the length and inertia swings slower than one tube.
  EXPECT_LT(single.torsional_rpm[0], per_tube.torsional_rpm[0]);
  EXPECT_LT(single.torsional_rpm[1], per_tube.torsional_rpm[1]);
}

TEST(AnalyzeDesign, ReportsMassesConsistently) {
  const MaterialCatalog cat;
  const DrivelineConfig config = supercritical_two_tube();
  const ShaftAnalysis a = analyze_design(hm_two_tube_design(cat), config);
  expect_rel(driveline_mass(config, a.shaft_mass_kg, a.support_mass_kg),
             a.driveline_mass_kg, 1e-12);
  expect_rel(a.section.shaft_mass, a.shaft_mass_kg, 1e-12);
}

}  // namespace
