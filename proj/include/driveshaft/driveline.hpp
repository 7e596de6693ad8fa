#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "driveshaft/buckling.hpp"
#include "driveshaft/rotordynamics.hpp"
#include "driveshaft/strength.hpp"
#include "driveshaft/torsional.hpp"

namespace driveshaft {

enum class Regime { Subcritical, Supercritical };

/// How the torsional member between the gearbox and rotor inertias is formed:
/// one tube span with its own inertia, or the whole line as a single member.
enum class TorsionalConvention { PerTube, SingleMember };

/// Unit convention for the empirical support-mass law.
enum class PowerUnit { Horsepower, Watts };

/// Reserve factors inside the constraints and the penalty weights applied to
/// violations.
struct ReserveFactors {
  double k_str = 0.44;
  double k_buck = 0.44;
  double k_t_sup = 0.83;
  double k_t_inf = 1.15;
  double k_f_sup = 0.8;
  double k_f_inf = 1.2;
  double k_th = 0.8;
  double gamma_strength = 2.0;
  double gamma_buckling = 2.0;
  double gamma_thickness = 6.0;
  double gamma_frequency = 4.0;
};

/// Fixed data of the optimization scenario: the driveline being replaced.
struct DrivelineConfig {
  double total_length = 0.0;  // m, equals shaft_count * tube length
  int shaft_count = 1;        // N_s; intermediate supports N_b = N_s - 1
  double power_w = 0.0;       // transmitted power, W
  double j_gear = 0.0;        // gearbox inertia, kg m^2
  double j_rotor = 0.0;       // tail rotor inertia, kg m^2
  double weight_penalty_per_shaft = 1.5;  // joints/fittings allowance, kg
  double min_thickness = 1.0e-3;          // t_s,min, m
  Regime regime = Regime::Subcritical;
  TorsionalConvention torsional_convention = TorsionalConvention::PerTube;
  PowerUnit support_mass_unit = PowerUnit::Horsepower;
  double eta_e = 0.0;         // support loss factor (supercritical)
  int torsional_modes = 2;    // torsional constraints cover n = 1..this
  int flexural_harmonics = 4; // flexural constraints cover n = 1..this
  BucklingSearchConfig buckling;
};

/// One decoded candidate: laminate, radius, support stiffness, speed.
struct ShaftDesign {
  StackingSequence sequence;
  double mean_radius = 0.0;     // m
  double support_stiffness = 0.0;  // k_e, N/m (supercritical scenarios)
  double omega_rpm = 0.0;       // nominal spin speed, rev/min
};

/// Everything the constraints consume, plus reporting extras.
struct ShaftAnalysis {
  HomogenizedShaftMaterial material;
  SectionProperties section;
  ShaftGeometry geometry;
  double omega_rpm = 0.0;         // nominal spin speed, rev/min
  double nominal_torque = 0.0;    // P / Omega, N m
  double strength_torque = 0.0;   // first-ply-failure torque, N m
  double buckling_torque = 0.0;   // positive-direction shell search, N m
  std::vector<double> torsional_rpm;  // modes 1..torsional_modes
  double rigid_first_critical_rpm = 0.0;  // subcritical route
  // Forward pair (low, high) per harmonic, rev/min; NaN marks an invalid
  // closed-form regime for that harmonic.
  std::vector<std::pair<double, double>> forward_critical_rpm;
  std::optional<double> threshold_rpm;  // absent when stable at all speeds
  double support_mass_kg = 0.0;   // one intermediate support, m_b
  double shaft_mass_kg = 0.0;     // one tube, m_s
  double driveline_mass_kg = 0.0; // N_s m_s + N_b m_b + penalties
};

/// Empirical support mass m_b = 17.1288 (P / Omega)^0.69 with P in the
/// configured unit (horsepower reproduces the published support weights).
double support_mass(double power_w, double omega_rpm, PowerUnit unit);

/// N_s m_s + N_b m_b + N_s * penalty.
double driveline_mass(const DrivelineConfig& config, double shaft_mass,
                      double support_mass);

/// Full analysis pipeline for one candidate design.
ShaftAnalysis analyze_design(const ShaftDesign& design,
                             const DrivelineConfig& config);

/// One constraint value with its penalty weight.
struct ConstraintValue {
  std::string id;
  double value = 0.0;
  double gamma = 0.0;
};

struct ConstraintReport {
  std::vector<ConstraintValue> values;
  bool feasible = false;
};

/// Evaluates the constraint set: strength and buckling torque reserves,
/// thickness floor, torsional frequency bands per mode, and either the
/// subcritical first-critical ceiling or the supercritical band constraints
/// on both forward speeds per harmonic plus the stability threshold floor.
ConstraintReport evaluate_constraints(const ShaftAnalysis& analysis,
                                      const DrivelineConfig& config,
                                      const ReserveFactors& factors);

/// Penalized objective f = 1/m_s + sum gamma_j min(0, g_j).
double fitness(double shaft_mass, const ConstraintReport& report);

}  // namespace driveshaft
