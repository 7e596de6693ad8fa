#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "driveshaft/ga.hpp"

namespace driveshaft {

/// Configuration problem: carries the offending section/key in the message.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Minimal INI document: [section] headers, key = value lines, '#' or ';'
/// comments. Key order inside a section is preserved for serialization.
class IniDocument {
 public:
  static IniDocument parse(const std::string& text);
  static IniDocument parse_file(const std::string& path);

  bool has_section(const std::string& section) const;
  bool has_key(const std::string& section, const std::string& key) const;
  /// Throws ConfigError naming section and key when missing.
  const std::string& get(const std::string& section,
                         const std::string& key) const;
  void set(const std::string& section, const std::string& key,
           std::string value);

  std::vector<std::string> sections() const;
  std::vector<std::pair<std::string, std::string>> items(
      const std::string& section) const;

  std::string serialize() const;

 private:
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> data_;
};

/// Shaft wall description: either a stacking sequence or isotropic constants.
struct ShaftSection {
  ShaftGeometry geometry;
  std::optional<std::vector<PlyGroup>> sequence;
  // Isotropic route:
  std::optional<double> iso_e, iso_nu, iso_rho, iso_thickness, iso_eta_i,
      iso_g;
  std::optional<double> omega_rpm;  // nominal speed for analysis

  HomogenizedShaftMaterial wall_material(const MaterialCatalog& catalog) const;
  StackingSequence plies(const MaterialCatalog& catalog) const;
};

/// Parsed scenario: the sections a command may consume. Optional blocks stay
/// unset when their section is absent.
struct ScenarioConfig {
  MaterialCatalog catalog;
  std::optional<ShaftSection> shaft;
  std::optional<SupportProperties> supports;
  std::optional<DrivelineConfig> driveline;
  ReserveFactors factors;
  std::optional<EncodingSpec> encoding;
  GaParams ga;
  // Optional early-stop targets for desk-scale runs.
  std::optional<double> stop_feasible_tube_mass;   // N_s * m_s <= value
  std::optional<double> stop_feasible_total_mass;  // m_dv <= value
};

/// Parses and validates a scenario file. Unknown sections or keys raise
/// ConfigError naming them; so do malformed values.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario(const std::string& text);

/// Parses "90:HM, 45:HS, 0:HM*4" style sequence lists.
std::vector<PlyGroup> parse_sequence(const std::string& text);
std::string format_sequence(const std::vector<PlyGroup>& groups);

}  // namespace driveshaft
