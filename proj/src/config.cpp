#include "sg/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sg {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

Real parse_real(const std::string& v, const std::string& where,
                const std::string& key) {
  std::size_t used = 0;
  Real out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) {
    throw ConfigError(where + ": key '" + key + "': expected a number, got '" +
                      v + "'");
  }
  return out;
}

std::int64_t parse_int(const std::string& v, const std::string& where,
                       const std::string& key) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) {
    throw ConfigError(where + ": key '" + key +
                      "': expected an integer, got '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& v, const std::string& where,
                const std::string& key) {
  std::string s = v;
  std::transform(s.begin(), s.end(), s.begin(), ::tolower);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw ConfigError(where + ": key '" + key + "': expected a boolean, got '" +
                    v + "'");
}

std::vector<std::string> split_commas(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

}  // namespace

ModelKind parse_model(const std::string& name) {
  if (name == "rigid_sphere") return ModelKind::rigid_sphere;
  if (name == "point_particle") return ModelKind::point_particle;
  if (name == "pauli_qm") return ModelKind::pauli_qm;
  if (name == "dirac_field") return ModelKind::dirac_field;
  throw ConfigError("unknown model '" + name +
                    "' (expected rigid_sphere, point_particle, pauli_qm, "
                    "dirac_field, or all)");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "model",          "unit-system",     "hbar",
      "mass",           "charge-e",        "c-light",
      "b0",             "eta",             "dt-field",
      "packet-width",   "sphere-radius",   "grid-n",
      "grid-halfwidth", "spin-theta",      "spin-phi",
      "spin-axis",      "flight-time",     "separation-time",
      "include-sigma-x", "consistency-c-fix", "sweep-thetas",
      "out-dir"};
  return keys;
}

void apply_config_value(ScenarioConfig& cfg, const std::string& key,
                        const std::string& value, const std::string& where) {
  if (key == "model") {
    if (value == "all") {
      cfg.models = {ModelKind::rigid_sphere, ModelKind::point_particle,
                    ModelKind::pauli_qm, ModelKind::dirac_field};
      return;
    }
    cfg.models.clear();
    for (const std::string& m : split_commas(value)) {
      try {
        cfg.models.push_back(parse_model(m));
      } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
    if (cfg.models.empty()) {
      throw ConfigError(where + ": key 'model': empty model list");
    }
  } else if (key == "unit-system") {
    if (value == "hartree-atomic") {
      cfg.phys.unit_system = UnitSystem::hartree_atomic;
    } else if (value == "gaussian-cgs-raw") {
      cfg.phys.unit_system = UnitSystem::gaussian_cgs_raw;
    } else {
      throw ConfigError(where +
                        ": key 'unit-system': expected hartree-atomic or "
                        "gaussian-cgs-raw, got '" +
                        value + "'");
    }
  } else if (key == "hbar") {
    cfg.phys.hbar = parse_real(value, where, key);
  } else if (key == "mass") {
    cfg.phys.mass = parse_real(value, where, key);
  } else if (key == "charge-e") {
    cfg.phys.charge_e = parse_real(value, where, key);
  } else if (key == "c-light") {
    cfg.phys.c = parse_real(value, where, key);
  } else if (key == "b0") {
    cfg.phys.B0 = parse_real(value, where, key);
  } else if (key == "eta") {
    cfg.phys.eta = parse_real(value, where, key);
  } else if (key == "dt-field") {
    cfg.phys.dt_field = parse_real(value, where, key);
  } else if (key == "packet-width") {
    cfg.phys.d = parse_real(value, where, key);
  } else if (key == "sphere-radius") {
    cfg.phys.R = parse_real(value, where, key);
  } else if (key == "grid-n") {
    cfg.grid_n = parse_int(value, where, key);
  } else if (key == "grid-halfwidth") {
    cfg.grid_halfwidth = parse_real(value, where, key);
  } else if (key == "spin-theta") {
    cfg.spin_theta = parse_real(value, where, key);
  } else if (key == "spin-phi") {
    cfg.spin_phi = parse_real(value, where, key);
  } else if (key == "spin-axis") {
    if (value == "z") {
      cfg.spin_theta = 0.0;
      cfg.spin_phi = 0.0;
    } else if (value == "-z") {
      cfg.spin_theta = pi;
      cfg.spin_phi = 0.0;
    } else if (value == "x") {
      cfg.spin_theta = 0.5 * pi;
      cfg.spin_phi = 0.0;
    } else if (value == "-x") {
      cfg.spin_theta = 0.5 * pi;
      cfg.spin_phi = pi;
    } else if (value == "y") {
      cfg.spin_theta = 0.5 * pi;
      cfg.spin_phi = 0.5 * pi;
    } else if (value == "-y") {
      cfg.spin_theta = 0.5 * pi;
      cfg.spin_phi = -0.5 * pi;
    } else {
      throw ConfigError(where +
                        ": key 'spin-axis': expected one of x,-x,y,-y,z,-z, "
                        "got '" +
                        value + "'");
    }
  } else if (key == "flight-time") {
    cfg.flight_time = parse_real(value, where, key);
  } else if (key == "separation-time") {
    cfg.separation_time = parse_real(value, where, key);
  } else if (key == "include-sigma-x") {
    cfg.include_sigma_x = parse_bool(value, where, key);
  } else if (key == "consistency-c-fix") {
    cfg.consistency_c_fix = parse_bool(value, where, key);
  } else if (key == "sweep-thetas") {
    cfg.sweep_thetas.clear();
    for (const std::string& t : split_commas(value)) {
      cfg.sweep_thetas.push_back(parse_real(t, where, key));
    }
    if (cfg.sweep_thetas.empty()) {
      throw ConfigError(where + ": key 'sweep-thetas': empty list");
    }
  } else if (key == "out-dir") {
    cfg.out_dir = value;
  } else {
    throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

void load_config_file(ScenarioConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = path + ":" + std::to_string(lineno);
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
    }
    apply_config_value(cfg, trim(line.substr(0, eq)),
                       trim(line.substr(eq + 1)), where);
  }
}

void apply_env_overrides(ScenarioConfig& cfg) {
  for (const std::string& key : config_keys()) {
    std::string env = "SGSIM_";
    for (char c : key) env += c == '-' ? '_' : static_cast<char>(::toupper(c));
    if (const char* v = std::getenv(env.c_str())) {
      apply_config_value(cfg, key, v, "env " + env);
    }
  }
}

Grid3 config_grid(const ScenarioConfig& cfg) {
  if (cfg.grid_n < 3) throw ConfigError("grid-n must be at least 3");
  if (!(cfg.grid_halfwidth > 0.0)) {
    throw ConfigError("grid-halfwidth must be positive");
  }
  return Grid3(cfg.grid_n, cfg.grid_halfwidth);
}

Real resolved_flight_time(const ScenarioConfig& cfg) {
  if (cfg.flight_time >= 0.0) return cfg.flight_time;
  return 10.0 * cfg.phys.mass * cfg.phys.d * cfg.phys.d / cfg.phys.hbar;
}

Real resolved_separation_time(const ScenarioConfig& cfg) {
  if (cfg.separation_time >= 0.0) return cfg.separation_time;
  return 1.5 * cfg.phys.mass * cfg.phys.d * cfg.phys.d / cfg.phys.hbar;
}

Vec3 spin_axis_from_angles(Real theta, Real phi) {
  return Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
              std::cos(theta));
}

}  // namespace sg
