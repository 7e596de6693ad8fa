#include "driveshaft/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "driveshaft/fixtures.hpp"
#include "driveshaft/report.hpp"

namespace driveshaft {

namespace {

/// Key/value records mirrored into analyze.csv next to the human report.
class Records {
 public:
  void add(const std::string& key, double value) {
    rows_.emplace_back(key, fmt9(value));
  }
  void add_flag(const std::string& key, bool value) {
    rows_.emplace_back(key, value ? "1" : "0");
  }
  void write(const std::string& out_dir, const std::string& name) const {
    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    std::ofstream file(out_dir + "/" + name);
    file << csv_line({"key", "value"});
    for (const auto& [k, v] : rows_) file << csv_line({k, v});
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

void row(std::ostream& out, Records& rec, const std::string& label,
         const std::string& key, double value, const char* unit = "") {
  out << "  " << std::left << std::setw(36) << label << fmt9(value);
  if (unit[0] != '\0') out << ' ' << unit;
  out << '\n';
  rec.add(key, value);
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.3f", 100.0 * fraction);
  return buf;
}

TorsionalSystem torsional_system(const DrivelineConfig& config,
                                 const ShaftGeometry& geom,
                                 const SectionProperties& section,
                                 const HomogenizedShaftMaterial& wall) {
  TorsionalSystem sys;
  sys.j_gear = config.j_gear;
  sys.j_rotor = config.j_rotor;
  if (config.torsional_convention == TorsionalConvention::SingleMember) {
    sys.j_shaft = config.shaft_count * section.j_polar_mass;
    sys.length = config.shaft_count * geom.length;
  } else {
    sys.j_shaft = section.j_polar_mass;
    sys.length = geom.length;
  }
  sys.g_shear = wall.g_shear;
  sys.rho = wall.rho;
  return sys;
}

}  // namespace

int cmd_analyze(const ScenarioConfig& config, std::ostream& out,
                const std::string& out_dir) {
  if (!config.shaft) {
    throw ConfigError("analyze requires a [shaft] section");
  }
  const ShaftSection& shaft = *config.shaft;
  const HomogenizedShaftMaterial wall = shaft.wall_material(config.catalog);
  const ShaftGeometry geom = shaft.geometry;
  const SectionProperties section = section_properties(geom, wall);
  Records rec;

  out << "Tube wall\n";
  if (shaft.sequence) {
    out << "  stacking sequence                   "
        << format_sequence(*shaft.sequence) << '\n';
  }
  row(out, rec, "longitudinal modulus", "e_long", wall.e_long, "Pa");
  row(out, rec, "shear modulus", "g_shear", wall.g_shear, "Pa");
  row(out, rec, "Poisson ratio", "nu", wall.nu);
  row(out, rec, "shear coefficient", "kappa", wall.kappa);
  row(out, rec, "density", "rho", wall.rho, "kg/m^3");
  row(out, rec, "wall thickness", "thickness", wall.thickness, "m");
  row(out, rec, "internal loss factor", "eta_i", wall.eta_i);

  out << "Section (mean radius " << fmt9(geom.mean_radius) << " m, length "
      << fmt9(geom.length) << " m)\n";
  row(out, rec, "wall area", "area", section.area, "m^2");
  row(out, rec, "transverse second moment", "i_transverse",
      section.i_transverse, "m^4");
  row(out, rec, "polar second moment", "i_polar", section.i_polar, "m^4");
  row(out, rec, "tube mass", "shaft_mass", section.shaft_mass, "kg");
  row(out, rec, "polar mass inertia", "j_polar_mass", section.j_polar_mass,
      "kg m^2");

  std::optional<StackingSequence> plies;
  if (shaft.sequence) plies = shaft.plies(config.catalog);

  if (plies) {
    out << "Torque capacity\n";
    row(out, rec, "max stress, uncoupled wall", "strength_max_stress_b0",
        torque_capacity(*plies, geom.mean_radius, FailureCriterion::MaxStress,
                        CouplingTreatment::BZero)
            .torque,
        "N m");
    row(out, rec, "max stress, coupled wall", "strength_max_stress_bfull",
        torque_capacity(*plies, geom.mean_radius, FailureCriterion::MaxStress,
                        CouplingTreatment::BAsIs)
            .torque,
        "N m");
    row(out, rec, "Tsai-Wu, uncoupled wall", "strength_tsai_wu_b0",
        torque_capacity(*plies, geom.mean_radius, FailureCriterion::TsaiWu,
                        CouplingTreatment::BZero)
            .torque,
        "N m");
    row(out, rec, "Tsai-Wu, coupled wall", "strength_tsai_wu_bfull",
        torque_capacity(*plies, geom.mean_radius, FailureCriterion::TsaiWu,
                        CouplingTreatment::BAsIs)
            .torque,
        "N m");
    const LaminateStiffness lam = build_abd(*plies);
    const BucklingSearchConfig search =
        config.driveline ? config.driveline->buckling : BucklingSearchConfig{};
    const BucklingResult pos = buckling_torque(lam, geom, +1, search);
    const BucklingResult neg = buckling_torque(lam, geom, -1, search);
    if (pos.found) {
      row(out, rec, "shell buckling, positive twist", "buckling_pos",
          pos.torque, "N m");
    } else {
      out << "  shell buckling, positive twist      no root in search window\n";
    }
    if (neg.found) {
      row(out, rec, "shell buckling, negative twist", "buckling_neg",
          neg.torque, "N m");
    } else {
      out << "  shell buckling, negative twist      no root in search window\n";
    }
    row(out, rec, "closed-form buckling estimate", "hayashi",
        hayashi_torque(lam, geom.mean_radius), "N m");
  }

  out << "Bending criticals\n";
  const SupportProperties rigid_probe{1.0, 1.0, 0.0};
  const ModalParameters mp1 =
      modal_parameters(geom, section, wall, rigid_probe, 1);
  if (mp1.flex_ratio - mp1.gyro_ratio > 0.0) {
    row(out, rec, "first critical, rigid supports",
        "rigid_first_critical_rpm",
        to_rpm(rigid_support_first_critical(mp1)), "rev/min");
  } else {
    out << "  first critical, rigid supports      outside closed-form"
           " validity\n";
  }
  if (config.supports) {
    const SupportProperties& sup = *config.supports;
    for (int n = 1; n <= 4; ++n) {
      const auto speeds =
          critical_speeds(modal_parameters(geom, section, wall, sup, n));
      const std::string tag = "supports.crit_n" + std::to_string(n);
      if (speeds) {
        row(out, rec, "harmonic " + std::to_string(n) + " forward low",
            tag + "_lo_rpm", to_rpm(speeds->forward_low), "rev/min");
        row(out, rec, "harmonic " + std::to_string(n) + " forward high",
            tag + "_hi_rpm", to_rpm(speeds->forward_high), "rev/min");
      } else {
        out << "  harmonic " << n
            << " forward pair            outside closed-form validity\n";
      }
    }
    const StabilityResult stab = stability_threshold(
        geom, section, wall, sup, wall.eta_i, sup.eta_e, 4);
    if (stab.threshold) {
      row(out, rec, "instability threshold", "supports.threshold_rpm",
          to_rpm(*stab.threshold), "rev/min");
    } else {
      out << "  instability threshold               stable at all speeds\n";
    }
    rec.add_flag("supports.stable_all_speeds", stab.stable_at_all_speeds);
  }

  if (config.driveline) {
    const DrivelineConfig& dl = *config.driveline;
    out << "Torsional modes\n";
    const TorsionalSystem sys = torsional_system(dl, geom, section, wall);
    const std::vector<double> modes =
        torsional_frequencies(sys, dl.torsional_modes);
    for (std::size_t i = 0; i < modes.size(); ++i) {
      row(out, rec, "mode " + std::to_string(i + 1),
          "torsion_mode" + std::to_string(i + 1) + "_rpm", to_rpm(modes[i]),
          "rev/min");
    }
    if (shaft.omega_rpm) {
      const double omega = *shaft.omega_rpm;
      out << "Driveline at " << fmt9(omega) << " rev/min\n";
      row(out, rec, "nominal torque", "nominal_torque",
          dl.power_w / to_rad_s(omega), "N m");
      const double mb = support_mass(dl.power_w, omega, dl.support_mass_unit);
      row(out, rec, "intermediate support mass", "support_mass_kg", mb, "kg");
      row(out, rec, "driveline mass", "driveline_mass_kg",
          driveline_mass(dl, section.shaft_mass, mb), "kg");
      if (plies) {
        ShaftDesign design;
        design.sequence = *plies;
        design.mean_radius = geom.mean_radius;
        design.support_stiffness =
            config.supports ? config.supports->stiffness : 0.0;
        design.omega_rpm = omega;
        // The tube length pins the line length so the two sections cannot
        // disagree.
        DrivelineConfig cfg = dl;
        cfg.total_length = geom.length * cfg.shaft_count;
        const ShaftAnalysis analysis = analyze_design(design, cfg);
        const ConstraintReport constraints =
            evaluate_constraints(analysis, cfg, config.factors);
        out << "Constraints\n";
        for (const ConstraintValue& g : constraints.values) {
          row(out, rec, "g " + g.id, "g." + g.id, g.value);
        }
        rec.add_flag("feasible", constraints.feasible);
        out << "  feasible                            "
            << (constraints.feasible ? "yes" : "no") << '\n';
        row(out, rec, "fitness", "fitness",
            fitness(analysis.shaft_mass_kg, constraints));
      }
    }
  }

  rec.write(out_dir, "analyze.csv");
  return kExitOk;
}

int cmd_optimize(const ScenarioConfig& config, std::ostream& out,
                 const std::string& out_dir, std::uint64_t seed_override,
                 bool has_seed, int threads_override) {
  if (!config.encoding) {
    throw ConfigError("optimize requires an [encoding] section");
  }
  if (!config.driveline) {
    throw ConfigError("optimize requires a [driveline] section");
  }
  GaParams params = config.ga;
  if (has_seed) params.rng_seed = seed_override;
  if (threads_override > 0) params.threads = threads_override;

  const EncodingSpec enc = *config.encoding;
  const DrivelineConfig dl = *config.driveline;
  const ScenarioEvaluator evaluator(enc, dl, config.factors, config.catalog);

  StopCondition stop;
  if (config.stop_feasible_tube_mass || config.stop_feasible_total_mass) {
    const std::optional<double> tube = config.stop_feasible_tube_mass;
    const std::optional<double> total = config.stop_feasible_total_mass;
    stop = [tube, total, dl, enc](const GenerationRecord& record) {
      if (!record.best_feasible) return false;
      if (tube && dl.shaft_count * record.best_mass <= *tube) return true;
      if (total) {
        const DecodedDesign d = decode(record.best, enc);
        const double mb =
            support_mass(dl.power_w, d.omega_rpm, dl.support_mass_unit);
        if (driveline_mass(dl, record.best_mass, mb) <= *total) return true;
      }
      return false;
    };
  }

  const EvolveResult result = evolve(params, enc.length(), evaluator, stop);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream hist(out_dir + "/history.csv");
    hist << csv_line({"generation", "best_fitness", "best_mass_kg",
                      "feasible_flag", "best_chromosome_hex"});
    for (const GenerationRecord& g : result.history) {
      hist << csv_line({std::to_string(g.generation), fmt9(g.best_fitness),
                        fmt9(g.best_mass), g.best_feasible ? "1" : "0",
                        chromosome_hex(g.best)});
    }
  }

  const DecodedDesign decoded = decode(result.best, enc);
  const ShaftDesign best = evaluator.make_design(result.best);
  const ShaftAnalysis analysis = analyze_design(best, dl);
  const ConstraintReport constraints =
      evaluate_constraints(analysis, dl, config.factors);

  out << "Generations evaluated    " << result.history.size() << '\n';
  out << "Best fitness             " << fmt9(result.best_eval.fitness) << '\n';
  out << "Best design\n";
  out << "  sequence               " << format_sequence(decoded.groups)
      << '\n';
  out << "  mean radius            " << fmt9(best.mean_radius) << " m\n";
  if (enc.bit_ke > 0) {
    out << "  support stiffness      " << fmt9(best.support_stiffness)
        << " N/m\n";
  }
  out << "  speed                  " << fmt9(best.omega_rpm) << " rev/min\n";
  out << "  wall thickness         " << fmt9(analysis.material.thickness)
      << " m\n";
  out << "  tube mass              " << fmt9(analysis.shaft_mass_kg)
      << " kg\n";
  out << "  support mass           " << fmt9(analysis.support_mass_kg)
      << " kg\n";
  out << "  driveline mass         " << fmt9(analysis.driveline_mass_kg)
      << " kg\n";
  out << "  feasible               " << (constraints.feasible ? "yes" : "no")
      << '\n';
  if (result.has_feasible) {
    out << "Lightest feasible tube   " << fmt9(result.best_feasible_mass)
        << " kg (generation " << result.best_feasible_generation << ")\n";
  } else {
    out << "No feasible design encountered\n";
  }

  if (!out_dir.empty()) {
    IniDocument doc;
    doc.set("shaft", "length", fmt9(dl.total_length / dl.shaft_count));
    doc.set("shaft", "mean_radius", fmt9(best.mean_radius));
    doc.set("shaft", "sequence", format_sequence(decoded.groups));
    doc.set("shaft", "omega_rpm", fmt9(best.omega_rpm));
    if (enc.bit_ke > 0 || best.support_stiffness > 0.0) {
      doc.set("supports", "mass", fmt9(analysis.support_mass_kg));
      doc.set("supports", "stiffness", fmt9(best.support_stiffness));
      doc.set("supports", "eta_e", fmt9(dl.eta_e));
    }
    std::ofstream ini(out_dir + "/best_design.ini");
    ini << doc.serialize();
  }
  return kExitOk;
}

int cmd_validate(const std::string& selector, std::ostream& out) {
  ValidationReport report;
  try {
    report = run_validation(selector);
  } catch (const std::invalid_argument& e) {
    out << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  out << std::left << std::setw(46) << "fixture" << std::setw(16) << "expected"
      << std::setw(16) << "computed" << std::setw(11) << "rel_err_%"
      << "status\n";
  int blocking = 0;
  int blocking_pass = 0;
  for (const FixtureResult& r : report.results) {
    out << std::left << std::setw(46) << r.id << std::setw(16)
        << fmt9(r.expected) << std::setw(16) << fmt9(r.computed)
        << std::setw(11) << percent(r.rel_err)
        << (r.pass ? "PASS" : "FAIL") << (r.blocking ? "" : " (ref)");
    if (!r.pass && !r.note.empty()) out << "  # " << r.note;
    out << '\n';
    if (r.blocking) {
      ++blocking;
      if (r.pass) ++blocking_pass;
    }
  }
  out << report.results.size() << " fixtures, " << blocking_pass << "/"
      << blocking << " gating comparisons passed: "
      << (report.all_blocking_pass ? "PASS" : "FAIL") << '\n';
  return report.all_blocking_pass ? kExitOk : kExitFailure;
}

}  // namespace driveshaft
