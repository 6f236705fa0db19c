#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sg/fields.hpp"
#include "sg/grid.hpp"
#include "sg/types.hpp"
#include "sg/units.hpp"

namespace sg {

// Rigid uniformly charged sphere with fixed-magnitude spin: angular momentum
// L = (hbar/2) n, magnetic moment m = -mu n. The fixed magnitudes are a
// postulate of the model, enforced kinematically.
struct SphereState {
  Vec3 center = Vec3::Zero();
  Vec3 momentum = Vec3::Zero();
  Vec3 spin_axis = Vec3::UnitZ();  // unit n
  Real mu = 0.0;
  Real radius = 0.0;
  Real charge = 0.0;  // total charge, -e for the electron

  Vec3 m_vec() const { return -mu * spin_axis; }
};

SphereState make_sphere_state(const PhysParams& p, const Vec3& spin_axis,
                              const Vec3& center = Vec3::Zero(),
                              const Vec3& momentum = Vec3::Zero());

void validate_state(const SphereState& s);

// J = (15 mu c / 4 pi R^5) (r x n) inside the sphere, 0 outside (r from center).
Vec3 sphere_current_density(const SphereState& s, const PhysParams& p,
                            const Vec3& x);

// G = -(15 hbar / 16 pi R^5) (r x n) inside the sphere.
Vec3 sphere_momentum_density(const SphereState& s, const PhysParams& p,
                             const Vec3& x);

// m = (1/2c) integral of r x J. Grid box must contain the sphere.
Vec3 magnetic_moment_quadrature(const SphereState& s, const PhysParams& p,
                                const Grid3& g);

// L = integral of r x G.
Vec3 angular_momentum_quadrature(const SphereState& s, const PhysParams& p,
                                 const Grid3& g);

// Lorentz force density on the charge and current distributions:
// f = rho_q E + (1/c) J x B, with rho_q uniform inside the sphere.
Vec3 sphere_force_density(const SphereState& s, const PhysParams& p,
                          const AnalyticEMField& f, const Vec3& x);

Vec3 sphere_total_force(const SphereState& s, const PhysParams& p,
                        const AnalyticEMField& f, const Grid3& g);

// Torque about the sphere center: integral of r x f.
Vec3 sphere_torque(const SphereState& s, const PhysParams& p,
                   const AnalyticEMField& f, const Grid3& g);

// U = -m.B and F = grad(m.B), closed forms through the field Jacobian.
Real potential_energy(const Vec3& m_vec, const AnalyticEMField& f, const Vec3& x);
Vec3 potential_force(const Vec3& m_vec, const AnalyticEMField& f, const Vec3& x);

struct RigidTrajectory {
  std::vector<Real> times;
  std::vector<SphereState> states;
};

// Fixed-step RK4 on (center, momentum, spin axis). The dipole force
// grad(m.B)(center) equals the force-density quadrature exactly for fields
// linear in position, which the SG field is. Spin axis renormalized each step.
// Requires dt <= 0.05 * (2 pi / omega_larmor).
RigidTrajectory integrate_rigid(const SphereState& s0, const PhysParams& p,
                                const AnalyticEMField& f, Real t_end, Real dt);

// Columns: t, center x/y/z, momentum x/y/z, spin axis x/y/z.
void write_rigid_csv(std::ostream& os, const RigidTrajectory& traj);
void write_rigid_csv(const std::string& path, const RigidTrajectory& traj);

struct SubluminalReport {
  Real equator_speed;  // 5 hbar / (4 m R)
  Real c;
  bool ok;  // speed strictly below c
};

// The momentum-density edge speed must stay subluminal for the model to be
// coherent; fails for R <= 5 hbar/(4 m c).
SubluminalReport validate_subluminal(const PhysParams& p);

}  // namespace sg
