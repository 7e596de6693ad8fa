#include "driveshaft/driveline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace driveshaft {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWattPerHp = 745.7;

double rad_s_to_rpm(double w) { return w * 60.0 / (2.0 * kPi); }

/// Interval constraint: the speed must clear the mode from below or from
/// above; only the binding side of the band survives the max().
double band_constraint(double mode_rpm, double omega_rpm, double k_inf,
                       double k_sup) {
  if (!std::isfinite(mode_rpm)) return -1.0;
  const double above = 1.0 - k_inf * mode_rpm / omega_rpm;
  const double below = k_sup * mode_rpm / omega_rpm - 1.0;
  return std::max(above, below);
}

}  // namespace

double support_mass(double power_w, double omega_rpm, PowerUnit unit) {
  if (power_w <= 0 || omega_rpm <= 0) {
    throw std::invalid_argument("support_mass requires positive power and speed");
  }
  const double p = (unit == PowerUnit::Horsepower) ? power_w / kWattPerHp
                                                   : power_w;
  return 17.1288 * std::pow(p / omega_rpm, 0.69);
}

double driveline_mass(const DrivelineConfig& config, double shaft_mass,
                      double support_mass) {
  const int n_s = config.shaft_count;
  const int n_b = n_s - 1;
  return n_s * shaft_mass + n_b * support_mass +
         n_s * config.weight_penalty_per_shaft;
}

ShaftAnalysis analyze_design(const ShaftDesign& design,
                             const DrivelineConfig& config) {
  if (config.shaft_count < 1) {
    throw std::invalid_argument("shaft_count must be at least 1");
  }
  ShaftAnalysis out;
  out.geometry = {design.mean_radius,
                  config.total_length / config.shaft_count};
  out.material = homogenize(design.sequence);
  out.section = section_properties(out.geometry, out.material);
  out.omega_rpm = design.omega_rpm;

  const double omega_rad = design.omega_rpm * 2.0 * kPi / 60.0;
  out.nominal_torque = config.power_w / omega_rad;

  out.strength_torque =
      torque_capacity(design.sequence, design.mean_radius,
                      FailureCriterion::MaxStress, CouplingTreatment::BZero)
          .torque;

  const LaminateStiffness lam = build_abd(design.sequence);
  const BucklingResult buck =
      buckling_torque(lam, out.geometry, +1, config.buckling);
  out.buckling_torque = buck.found ? buck.torque : 0.0;

  TorsionalSystem sys;
  sys.j_gear = config.j_gear;
  sys.j_rotor = config.j_rotor;
  sys.g_shear = out.material.g_shear;
  sys.rho = out.material.rho;
  if (config.torsional_convention == TorsionalConvention::PerTube) {
    sys.j_shaft = out.section.j_polar_mass;
    sys.length = out.geometry.length;
  } else {
    sys.j_shaft = config.shaft_count * out.section.j_polar_mass;
    sys.length = config.total_length;
  }
  for (double w : torsional_frequencies(sys, config.torsional_modes)) {
    out.torsional_rpm.push_back(rad_s_to_rpm(w));
  }

  out.support_mass_kg =
      support_mass(config.power_w, design.omega_rpm, config.support_mass_unit);
  SupportProperties support{out.support_mass_kg, design.support_stiffness,
                            config.eta_e};

  const ModalParameters mp1 =
      modal_parameters(out.geometry, out.section, out.material, support, 1);
  if (mp1.flex_ratio - mp1.gyro_ratio > 0) {
    out.rigid_first_critical_rpm =
        rad_s_to_rpm(rigid_support_first_critical(mp1));
  } else {
    out.rigid_first_critical_rpm = std::numeric_limits<double>::quiet_NaN();
  }

  for (int n = 1; n <= config.flexural_harmonics; ++n) {
    const ModalParameters mp =
        modal_parameters(out.geometry, out.section, out.material, support, n);
    const auto speeds = critical_speeds(mp);
    if (speeds) {
      out.forward_critical_rpm.emplace_back(rad_s_to_rpm(speeds->forward_low),
                                            rad_s_to_rpm(speeds->forward_high));
    } else {
      out.forward_critical_rpm.emplace_back(
          std::numeric_limits<double>::quiet_NaN(),
          std::numeric_limits<double>::quiet_NaN());
    }
  }

  if (design.support_stiffness > 0) {
    const StabilityResult stab = stability_threshold(
        out.geometry, out.section, out.material, support, out.material.eta_i,
        config.eta_e, config.flexural_harmonics);
    if (stab.threshold) out.threshold_rpm = rad_s_to_rpm(*stab.threshold);
  }

  out.shaft_mass_kg = out.section.shaft_mass;
  out.driveline_mass_kg =
      driveline_mass(config, out.shaft_mass_kg, out.support_mass_kg);
  return out;
}

ConstraintReport evaluate_constraints(const ShaftAnalysis& analysis,
                                      const DrivelineConfig& config,
                                      const ReserveFactors& factors) {
  ConstraintReport report;
  const double om = analysis.omega_rpm;
  const double t_nom = analysis.nominal_torque;

  report.values.push_back(
      {"strength", factors.k_str * analysis.strength_torque / t_nom - 1.0,
       factors.gamma_strength});
  report.values.push_back(
      {"buckling", factors.k_buck * analysis.buckling_torque / t_nom - 1.0,
       factors.gamma_buckling});
  report.values.push_back(
      {"thickness",
       analysis.material.thickness / config.min_thickness - 1.0,
       factors.gamma_thickness});

  for (std::size_t i = 0; i < analysis.torsional_rpm.size(); ++i) {
    report.values.push_back(
        {"torsional_n" + std::to_string(i + 1),
         band_constraint(analysis.torsional_rpm[i], om, factors.k_t_inf,
                         factors.k_t_sup),
         factors.gamma_frequency});
  }

  if (config.regime == Regime::Subcritical) {
    const double wc = analysis.rigid_first_critical_rpm;
    const double g = std::isfinite(wc) ? factors.k_f_sup * wc / om - 1.0
                                       : -1.0;
    report.values.push_back({"flex_sub", g, factors.gamma_frequency});
  } else {
    int n = 1;
    for (const auto& [lo, hi] : analysis.forward_critical_rpm) {
      report.values.push_back(
          {"flex_n" + std::to_string(n) + "_lo",
           band_constraint(lo, om, factors.k_f_inf, factors.k_f_sup),
           factors.gamma_frequency});
      report.values.push_back(
          {"flex_n" + std::to_string(n) + "_hi",
           band_constraint(hi, om, factors.k_f_inf, factors.k_f_sup),
           factors.gamma_frequency});
      ++n;
    }
    if (analysis.threshold_rpm) {
      report.values.push_back(
          {"stability", factors.k_th * *analysis.threshold_rpm / om - 1.0,
           factors.gamma_frequency});
    }
  }

  report.feasible = true;
  for (const ConstraintValue& v : report.values) {
    const bool ok = (v.id == "flex_sub") ? (v.value > 0.0) : (v.value >= 0.0);
    if (!ok) report.feasible = false;
  }
  return report;
}

double fitness(double shaft_mass, const ConstraintReport& report) {
  double f = 1.0 / shaft_mass;
  for (const ConstraintValue& v : report.values) {
    f += v.gamma * std::min(0.0, v.value);
  }
  return f;
}

}  // namespace driveshaft
