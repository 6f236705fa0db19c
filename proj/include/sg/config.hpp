#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sg/detector.hpp"
#include "sg/grid.hpp"
#include "sg/types.hpp"
#include "sg/units.hpp"

namespace sg {

// Configuration problem (bad key, bad value, unreadable file): exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resolved scenario settings. Sources, in increasing precedence: built-in
// defaults, config file (key = value lines, # comments), environment
// variables (SGSIM_ prefix, KEY in upper snake case), command-line flags
// (--key in kebab-case). Parsing is strict: unknown keys are errors.
struct ScenarioConfig {
  std::vector<ModelKind> models{ModelKind::rigid_sphere,
                                ModelKind::point_particle, ModelKind::pauli_qm,
                                ModelKind::dirac_field};

  PhysParams phys{};  // defaults from units.hpp

  std::int64_t grid_n = 64;
  Real grid_halfwidth = 6.0;

  Real spin_theta = 0.0;
  Real spin_phi = 0.0;

  Real flight_time = -1.0;      // < 0: use 10 m d^2 / hbar
  Real separation_time = -1.0;  // < 0: use 1.5 m d^2 / hbar

  bool include_sigma_x = false;
  bool consistency_c_fix = true;

  std::vector<Real> sweep_thetas{0.0,
                                 pi / 6.0,
                                 pi / 4.0,
                                 pi / 3.0,
                                 pi / 2.0,
                                 2.0 * pi / 3.0,
                                 pi};

  std::string out_dir = ".";
};

// All recognized config keys (kebab-case), for help text and env scanning.
const std::vector<std::string>& config_keys();

// Applies one key=value pair; `where` prefixes error messages
// (e.g. "run.cfg:3" or "env SGSIM_GRID_N").
void apply_config_value(ScenarioConfig& cfg, const std::string& key,
                        const std::string& value, const std::string& where);

// Reads a key = value file (blank lines and # comments ignored).
void load_config_file(ScenarioConfig& cfg, const std::string& path);

// Applies SGSIM_<KEY> environment overrides for every recognized key.
void apply_env_overrides(ScenarioConfig& cfg);

// Derived accessors.
Grid3 config_grid(const ScenarioConfig& cfg);
Real resolved_flight_time(const ScenarioConfig& cfg);
Real resolved_separation_time(const ScenarioConfig& cfg);

// Unit spin direction from (theta, phi).
Vec3 spin_axis_from_angles(Real theta, Real phi);

ModelKind parse_model(const std::string& name);

}  // namespace sg
