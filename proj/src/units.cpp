#include "sg/units.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sg {

namespace {

void require_positive(Real v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(name) + " must be strictly positive");
}

void require_nonnegative(Real v, const char* name) {
  if (v < 0.0 || !std::isfinite(v))
    throw std::invalid_argument(std::string(name) + " must be >= 0");
}

}  // namespace

void validate_params(const PhysParams& p) {
  require_positive(p.hbar, "hbar");
  require_positive(p.mass, "mass");
  require_positive(p.charge_e, "charge_e");
  require_positive(p.c, "c");
  require_positive(p.dt_field, "dt_field");
  require_positive(p.d, "d");
  require_positive(p.R, "R");
  require_nonnegative(p.eta, "eta");
  require_nonnegative(p.B0, "B0");
  if (p.unit_system == UnitSystem::hartree_atomic) {
    if (p.hbar != 1.0 || p.mass != 1.0 || p.charge_e != 1.0)
      throw std::invalid_argument(
          "hartree_atomic mode requires hbar = mass = charge_e = 1");
  }
}

PhysParams to_atomic(const PhysParams& p) {
  if (p.unit_system == UnitSystem::hartree_atomic) {
    validate_params(p);
    return p;
  }
  require_positive(p.hbar, "hbar");
  require_positive(p.mass, "mass");
  require_positive(p.charge_e, "charge_e");
  // Unit scales built from the input's own constants so the conversion is
  // exact regardless of the measurement system the raw numbers came in.
  const Real a0 = p.hbar * p.hbar / (p.mass * p.charge_e * p.charge_e);
  const Real t0 = std::pow(p.hbar, 3) / (p.mass * std::pow(p.charge_e, 4));
  const Real v0 = a0 / t0;            // = e^2/hbar
  const Real field0 = p.charge_e / (a0 * a0);  // Gaussian E/B unit
  PhysParams out = p;
  out.hbar = 1.0;
  out.mass = 1.0;
  out.charge_e = 1.0;
  out.c = p.c / v0;
  out.B0 = p.B0 / field0;
  out.eta = p.eta / (field0 / a0);
  out.dt_field = p.dt_field / t0;
  out.d = p.d / a0;
  out.R = p.R / a0;
  out.unit_system = UnitSystem::hartree_atomic;
  validate_params(out);
  return out;
}

DerivedScales derive_scales(const PhysParams& p) {
  validate_params(p);
  DerivedScales s;
  s.mu = p.charge_e * p.hbar / (2.0 * p.mass * p.c);
  s.omega_larmor = 2.0 * s.mu * p.B0 / p.hbar;
  s.epsilon_rel = p.hbar / (p.mass * p.c * p.d);
  s.p_kick = s.mu * p.eta * p.dt_field;
  s.v_kick = s.p_kick / p.mass;
  return s;
}

RelativisticReport validate_nonrelativistic(const PhysParams& p) {
  RelativisticReport r;
  r.epsilon_rel = p.hbar / (p.mass * p.c * p.d);
  r.threshold = 0.1;
  r.ok = r.epsilon_rel < r.threshold;
  return r;
}

}  // namespace sg
