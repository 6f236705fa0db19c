#pragma once

#include "sg/types.hpp"

namespace sg {

enum class UnitSystem { hartree_atomic, gaussian_cgs_raw };

// Electron constants and apparatus settings. Electromagnetism is Gaussian
// throughout: E and B share one dimension and the moment is e*hbar/(2mc).
// The electron carries charge -charge_e.
struct PhysParams {
  Real hbar = 1.0;
  Real mass = 1.0;
  Real charge_e = 1.0;
  Real c = 137.036;
  Real B0 = 82221.6;      // homogeneous field strength, = 600*c
  Real eta = 822.216;     // field gradient, = 6*c; gives p_kick*d/hbar = 3
  Real dt_field = 1.0;    // time spent in the field
  Real d = 1.0;           // Gaussian packet width
  Real R = 1.0;           // rigid sphere radius
  UnitSystem unit_system = UnitSystem::hartree_atomic;
};

struct DerivedScales {
  Real mu;            // e*hbar/(2 m c)
  Real omega_larmor;  // 2 mu B0 / hbar
  Real epsilon_rel;   // hbar/(m c d), smallness of the lower spinor pair
  Real v_kick;        // mu eta dt / m
  Real p_kick;        // mu eta dt
};

// Throws std::invalid_argument on non-positive magnitudes (eta, B0 may be 0)
// or when hartree_atomic mode carries hbar, mass, charge_e != 1.
void validate_params(const PhysParams& p);

// Rescales a gaussian_cgs_raw parameter set to atomic units built from its own
// hbar, mass, charge_e (length hbar^2/(m e^2), time hbar^3/(m e^4), field
// e/a0^2). Identity for hartree_atomic input.
PhysParams to_atomic(const PhysParams& p);

DerivedScales derive_scales(const PhysParams& p);

struct RelativisticReport {
  Real epsilon_rel;
  Real threshold;
  bool ok;
};

// Non-relativistic validity gate for the lower-spinor lift: epsilon_rel < 0.1.
RelativisticReport validate_nonrelativistic(const PhysParams& p);

}  // namespace sg
