#include "driveshaft/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace driveshaft {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double parse_double(const std::string& section, const std::string& key,
                    const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("[" + section + "] " + key + ": not a number: '" +
                      value + "'");
  }
  if (trim(value.substr(used)) != "") {
    throw ConfigError("[" + section + "] " + key +
                      ": trailing characters in '" + value + "'");
  }
  return v;
}

int parse_int(const std::string& section, const std::string& key,
              const std::string& value) {
  const double v = parse_double(section, key, value);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    throw ConfigError("[" + section + "] " + key + ": expected an integer");
  }
  return i;
}

/// Rejects keys outside the section's vocabulary, naming the offender.
void check_keys(const IniDocument& doc, const std::string& section,
                const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : doc.items(section)) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in [" + section + "]");
    }
  }
}

const std::string& require(const IniDocument& doc, const std::string& section,
                           const std::string& key) {
  if (!doc.has_key(section, key)) {
    throw ConfigError("missing required key '" + key + "' in [" + section +
                      "]");
  }
  return doc.get(section, key);
}

}  // namespace

IniDocument IniDocument::parse(const std::string& text) {
  IniDocument doc;
  std::istringstream in(text);
  std::string line;
  std::string current;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": unterminated section header");
      }
      current = trim(s.substr(1, s.size() - 2));
      if (current.empty()) {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": empty section name");
      }
      if (!doc.has_section(current)) doc.data_.push_back({current, {}});
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    if (current.empty()) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": key before any [section]");
    }
    doc.set(current, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }
  return doc;
}

IniDocument IniDocument::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool IniDocument::has_section(const std::string& section) const {
  for (const auto& [name, kv] : data_) {
    (void)kv;
    if (name == section) return true;
  }
  return false;
}

bool IniDocument::has_key(const std::string& section,
                          const std::string& key) const {
  for (const auto& [name, kv] : data_) {
    if (name != section) continue;
    for (const auto& [k, v] : kv) {
      (void)v;
      if (k == key) return true;
    }
  }
  return false;
}

const std::string& IniDocument::get(const std::string& section,
                                    const std::string& key) const {
  for (const auto& [name, kv] : data_) {
    if (name != section) continue;
    for (const auto& [k, v] : kv) {
      if (k == key) return v;
    }
  }
  throw ConfigError("missing key '" + key + "' in [" + section + "]");
}

void IniDocument::set(const std::string& section, const std::string& key,
                      std::string value) {
  for (auto& [name, kv] : data_) {
    if (name != section) continue;
    for (auto& [k, v] : kv) {
      if (k == key) {
        v = std::move(value);
        return;
      }
    }
    kv.emplace_back(key, std::move(value));
    return;
  }
  data_.push_back({section, {{key, std::move(value)}}});
}

std::vector<std::string> IniDocument::sections() const {
  std::vector<std::string> out;
  for (const auto& [name, kv] : data_) {
    (void)kv;
    out.push_back(name);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> IniDocument::items(
    const std::string& section) const {
  for (const auto& [name, kv] : data_) {
    if (name == section) return kv;
  }
  return {};
}

std::string IniDocument::serialize() const {
  std::string out;
  for (const auto& [name, kv] : data_) {
    out += "[" + name + "]\n";
    for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
    out += "\n";
  }
  return out;
}

std::vector<PlyGroup> parse_sequence(const std::string& text) {
  std::vector<PlyGroup> out;
  for (const std::string& raw : split(text, ',')) {
    const std::string item = trim(raw);
    if (item.empty()) {
      throw ConfigError("empty entry in stacking sequence");
    }
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("sequence entry '" + item +
                        "' must look like angle:MATERIAL or "
                        "angle:MATERIAL*count");
    }
    PlyGroup g;
    g.angle_deg = parse_double("shaft", "sequence", trim(item.substr(0, colon)));
    std::string rest = trim(item.substr(colon + 1));
    const std::size_t star = rest.find('*');
    if (star != std::string::npos) {
      g.count = parse_int("shaft", "sequence", trim(rest.substr(star + 1)));
      rest = trim(rest.substr(0, star));
    }
    if (rest.empty()) {
      throw ConfigError("sequence entry '" + item + "' lacks a material name");
    }
    if (g.count < 1) {
      throw ConfigError("sequence entry '" + item +
                        "' has a non-positive ply count");
    }
    g.material = rest;
    out.push_back(std::move(g));
  }
  if (out.empty()) throw ConfigError("stacking sequence is empty");
  return out;
}

std::string format_sequence(const std::vector<PlyGroup>& groups) {
  std::string out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i) out += ", ";
    std::ostringstream cell;
    cell << groups[i].angle_deg << ":" << groups[i].material;
    if (groups[i].count != 1) cell << "*" << groups[i].count;
    out += cell.str();
  }
  return out;
}

StackingSequence ShaftSection::plies(const MaterialCatalog& catalog) const {
  if (!sequence) {
    throw ConfigError("[shaft] has no stacking sequence");
  }
  return expand(*sequence, catalog);
}

HomogenizedShaftMaterial ShaftSection::wall_material(
    const MaterialCatalog& catalog) const {
  if (sequence) return homogenize(plies(catalog));
  if (!iso_e || !iso_nu || !iso_rho || !iso_thickness) {
    throw ConfigError(
        "[shaft] needs either sequence or iso_e/iso_nu/iso_rho/iso_thickness");
  }
  HomogenizedShaftMaterial m = isotropic_wall(
      *iso_e, *iso_nu, *iso_rho, *iso_thickness, iso_eta_i.value_or(0.0));
  if (iso_g) m.g_shear = *iso_g;
  return m;
}

namespace {

void load_materials(const IniDocument& doc, ScenarioConfig& out) {
  for (const auto& [name, value] : doc.items("materials")) {
    std::istringstream in(value);
    std::vector<double> v;
    double x = 0.0;
    while (in >> x) v.push_back(x);
    if (!in.eof()) {
      throw ConfigError("[materials] " + name + ": malformed number list");
    }
    if (v.size() != 11 && v.size() != 14) {
      throw ConfigError(
          "[materials] " + name +
          ": expected 11 values (rho e11 e22 g12 nu12 xt xc yt yc s12 t_ply) "
          "or 14 (plus eta11 eta22 eta66)");
    }
    PlyMaterial m;
    m.name = name;
    m.rho = v[0];
    m.e11 = v[1];
    m.e22 = v[2];
    m.g12 = v[3];
    m.nu12 = v[4];
    m.xt = v[5];
    m.xc = v[6];
    m.yt = v[7];
    m.yc = v[8];
    m.s12 = v[9];
    m.t_ply = v[10];
    if (v.size() == 14) {
      m.eta11 = v[11];
      m.eta22 = v[12];
      m.eta66 = v[13];
    }
    try {
      validate_material(m);
    } catch (const std::invalid_argument& err) {
      throw ConfigError("[materials] " + name + ": " + err.what());
    }
    out.catalog.add(std::move(m));
  }
}

void load_shaft(const IniDocument& doc, ScenarioConfig& out) {
  check_keys(doc, "shaft",
             {"length", "mean_radius", "sequence", "iso_e", "iso_nu",
              "iso_rho", "iso_thickness", "iso_eta_i", "iso_g", "omega_rpm"});
  ShaftSection s;
  s.geometry.length = parse_double("shaft", "length",
                                   require(doc, "shaft", "length"));
  s.geometry.mean_radius = parse_double(
      "shaft", "mean_radius", require(doc, "shaft", "mean_radius"));
  if (doc.has_key("shaft", "sequence")) {
    s.sequence = parse_sequence(doc.get("shaft", "sequence"));
  }
  auto opt = [&](const char* key) -> std::optional<double> {
    if (!doc.has_key("shaft", key)) return std::nullopt;
    return parse_double("shaft", key, doc.get("shaft", key));
  };
  s.iso_e = opt("iso_e");
  s.iso_nu = opt("iso_nu");
  s.iso_rho = opt("iso_rho");
  s.iso_thickness = opt("iso_thickness");
  s.iso_eta_i = opt("iso_eta_i");
  s.iso_g = opt("iso_g");
  s.omega_rpm = opt("omega_rpm");
  if (!s.sequence && !s.iso_e) {
    throw ConfigError("[shaft] needs a sequence or isotropic constants");
  }
  out.shaft = std::move(s);
}

void load_supports(const IniDocument& doc, ScenarioConfig& out) {
  check_keys(doc, "supports", {"mass", "stiffness", "eta_e"});
  SupportProperties s;
  s.mass = parse_double("supports", "mass", require(doc, "supports", "mass"));
  s.stiffness = parse_double("supports", "stiffness",
                             require(doc, "supports", "stiffness"));
  if (doc.has_key("supports", "eta_e")) {
    s.eta_e = parse_double("supports", "eta_e", doc.get("supports", "eta_e"));
  }
  out.supports = s;
}

void load_driveline(const IniDocument& doc, ScenarioConfig& out) {
  check_keys(doc, "driveline",
             {"total_length", "shaft_count", "power_w", "j_gear", "j_rotor",
              "weight_penalty_per_shaft", "min_thickness", "regime",
              "torsional_convention", "support_mass_unit", "eta_e",
              "torsional_modes", "flexural_harmonics", "buckling_h_max",
              "buckling_grid_points", "buckling_span"});
  DrivelineConfig d;
  d.total_length = parse_double("driveline", "total_length",
                                require(doc, "driveline", "total_length"));
  d.shaft_count = parse_int("driveline", "shaft_count",
                            require(doc, "driveline", "shaft_count"));
  d.power_w = parse_double("driveline", "power_w",
                           require(doc, "driveline", "power_w"));
  d.j_gear =
      parse_double("driveline", "j_gear", require(doc, "driveline", "j_gear"));
  d.j_rotor = parse_double("driveline", "j_rotor",
                           require(doc, "driveline", "j_rotor"));
  const std::string regime = require(doc, "driveline", "regime");
  if (regime == "subcritical") {
    d.regime = Regime::Subcritical;
  } else if (regime == "supercritical") {
    d.regime = Regime::Supercritical;
  } else {
    throw ConfigError(
        "[driveline] regime: expected subcritical or supercritical");
  }
  auto num = [&](const char* key, double& target) {
    if (doc.has_key("driveline", key)) {
      target = parse_double("driveline", key, doc.get("driveline", key));
    }
  };
  num("weight_penalty_per_shaft", d.weight_penalty_per_shaft);
  num("min_thickness", d.min_thickness);
  num("eta_e", d.eta_e);
  num("buckling_span", d.buckling.span);
  if (doc.has_key("driveline", "torsional_modes")) {
    d.torsional_modes = parse_int("driveline", "torsional_modes",
                                  doc.get("driveline", "torsional_modes"));
  }
  if (doc.has_key("driveline", "flexural_harmonics")) {
    d.flexural_harmonics =
        parse_int("driveline", "flexural_harmonics",
                  doc.get("driveline", "flexural_harmonics"));
  }
  if (doc.has_key("driveline", "buckling_h_max")) {
    d.buckling.h_max = parse_int("driveline", "buckling_h_max",
                                 doc.get("driveline", "buckling_h_max"));
  }
  if (doc.has_key("driveline", "buckling_grid_points")) {
    d.buckling.grid_points =
        parse_int("driveline", "buckling_grid_points",
                  doc.get("driveline", "buckling_grid_points"));
  }
  if (doc.has_key("driveline", "torsional_convention")) {
    const std::string c = doc.get("driveline", "torsional_convention");
    if (c == "per_tube") {
      d.torsional_convention = TorsionalConvention::PerTube;
    } else if (c == "single_member") {
      d.torsional_convention = TorsionalConvention::SingleMember;
    } else {
      throw ConfigError(
          "[driveline] torsional_convention: expected per_tube or "
          "single_member");
    }
  }
  if (doc.has_key("driveline", "support_mass_unit")) {
    const std::string u = doc.get("driveline", "support_mass_unit");
    if (u == "horsepower") {
      d.support_mass_unit = PowerUnit::Horsepower;
    } else if (u == "watts") {
      d.support_mass_unit = PowerUnit::Watts;
    } else {
      throw ConfigError(
          "[driveline] support_mass_unit: expected horsepower or watts");
    }
  }
  out.driveline = d;
}

void load_encoding(const IniDocument& doc, ScenarioConfig& out) {
  check_keys(doc, "encoding",
             {"group_count", "bit_alpha", "bit_n", "bit_mat", "bit_ke",
              "bit_rm", "bit_omega", "materials", "ke_lo", "ke_hi", "rm_lo",
              "rm_hi", "omega_lo", "omega_hi"});
  EncodingSpec e;
  e.group_count = parse_int("encoding", "group_count",
                            require(doc, "encoding", "group_count"));
  auto bit = [&](const char* key, int& target) {
    if (doc.has_key("encoding", key)) {
      target = parse_int("encoding", key, doc.get("encoding", key));
    }
  };
  bit("bit_alpha", e.bit_alpha);
  bit("bit_n", e.bit_n);
  bit("bit_mat", e.bit_mat);
  bit("bit_ke", e.bit_ke);
  bit("bit_rm", e.bit_rm);
  bit("bit_omega", e.bit_omega);
  for (const std::string& m :
       split(require(doc, "encoding", "materials"), ',')) {
    const std::string name = trim(m);
    if (name.empty()) continue;
    if (!out.catalog.find(name)) {
      throw ConfigError("[encoding] materials: unknown material '" + name +
                        "'");
    }
    e.materials.push_back(name);
  }
  const int mats_needed = e.bit_mat == 0 ? 1 : (1 << e.bit_mat);
  if (static_cast<int>(e.materials.size()) < mats_needed) {
    throw ConfigError("[encoding] materials: need " +
                      std::to_string(mats_needed) + " names for bit_mat=" +
                      std::to_string(e.bit_mat));
  }
  auto bound = [&](const char* lo_key, const char* hi_key, GeneBounds& b,
                   bool required) {
    if (required || doc.has_key("encoding", lo_key)) {
      b.lo = parse_double("encoding", lo_key,
                          require(doc, "encoding", lo_key));
      b.hi = parse_double("encoding", hi_key,
                          require(doc, "encoding", hi_key));
    }
  };
  bound("ke_lo", "ke_hi", e.ke_bounds, e.bit_ke > 0);
  bound("rm_lo", "rm_hi", e.rm_bounds, true);
  bound("omega_lo", "omega_hi", e.omega_bounds, true);
  out.encoding = std::move(e);
}

void load_ga(const IniDocument& doc, ScenarioConfig& out) {
  check_keys(doc, "ga",
             {"population_size", "crossover_prob", "mutation_prob", "elites",
              "max_generations", "rng_seed", "mutation_mode",
              "crossover_points", "threads", "time_budget_s",
              "stop_feasible_tube_mass", "stop_feasible_total_mass"});
  GaParams& g = out.ga;
  auto num = [&](const char* key, double& target) {
    if (doc.has_key("ga", key)) {
      target = parse_double("ga", key, doc.get("ga", key));
    }
  };
  auto count = [&](const char* key, int& target) {
    if (doc.has_key("ga", key)) {
      target = parse_int("ga", key, doc.get("ga", key));
    }
  };
  count("population_size", g.population_size);
  num("crossover_prob", g.crossover_prob);
  num("mutation_prob", g.mutation_prob);
  count("elites", g.elites);
  count("max_generations", g.max_generations);
  if (doc.has_key("ga", "rng_seed")) {
    g.rng_seed = static_cast<std::uint64_t>(
        parse_int("ga", "rng_seed", doc.get("ga", "rng_seed")));
  }
  if (doc.has_key("ga", "mutation_mode")) {
    const std::string m = doc.get("ga", "mutation_mode");
    if (m == "per_individual") {
      g.mutation_mode = MutationMode::PerIndividual;
    } else if (m == "per_bit") {
      g.mutation_mode = MutationMode::PerBit;
    } else {
      throw ConfigError(
          "[ga] mutation_mode: expected per_individual or per_bit");
    }
  }
  count("crossover_points", g.crossover_points);
  count("threads", g.threads);
  num("time_budget_s", g.time_budget_s);
  if (doc.has_key("ga", "stop_feasible_tube_mass")) {
    out.stop_feasible_tube_mass = parse_double(
        "ga", "stop_feasible_tube_mass",
        doc.get("ga", "stop_feasible_tube_mass"));
  }
  if (doc.has_key("ga", "stop_feasible_total_mass")) {
    out.stop_feasible_total_mass = parse_double(
        "ga", "stop_feasible_total_mass",
        doc.get("ga", "stop_feasible_total_mass"));
  }
}

void load_factors(const IniDocument& doc, ScenarioConfig& out) {
  check_keys(doc, "factors",
             {"k_str", "k_buck", "k_t_sup", "k_t_inf", "k_f_sup", "k_f_inf",
              "k_th", "gamma_strength", "gamma_buckling", "gamma_thickness",
              "gamma_frequency"});
  auto num = [&](const char* key, double& target) {
    if (doc.has_key("factors", key)) {
      target = parse_double("factors", key, doc.get("factors", key));
    }
  };
  ReserveFactors& f = out.factors;
  num("k_str", f.k_str);
  num("k_buck", f.k_buck);
  num("k_t_sup", f.k_t_sup);
  num("k_t_inf", f.k_t_inf);
  num("k_f_sup", f.k_f_sup);
  num("k_f_inf", f.k_f_inf);
  num("k_th", f.k_th);
  num("gamma_strength", f.gamma_strength);
  num("gamma_buckling", f.gamma_buckling);
  num("gamma_thickness", f.gamma_thickness);
  num("gamma_frequency", f.gamma_frequency);
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
  const IniDocument doc = IniDocument::parse(text);
  ScenarioConfig out;
  // Materials first: [encoding] and [shaft] may reference them by name
  // regardless of section order in the file.
  if (doc.has_section("materials")) load_materials(doc, out);
  for (const std::string& section : doc.sections()) {
    if (section == "materials") {
      continue;
    } else if (section == "shaft") {
      load_shaft(doc, out);
    } else if (section == "supports") {
      load_supports(doc, out);
    } else if (section == "driveline") {
      load_driveline(doc, out);
    } else if (section == "encoding") {
      load_encoding(doc, out);
    } else if (section == "ga") {
      load_ga(doc, out);
    } else if (section == "factors") {
      load_factors(doc, out);
    } else {
      throw ConfigError("unknown section [" + section + "]");
    }
  }
  return out;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace driveshaft
