#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sg/fields.hpp"
#include "sg/types.hpp"
#include "sg/units.hpp"

namespace sg {

// Point electron carrying intrinsic magnetic moment m_vec (|m| = mu) and
// intrinsic angular momentum l_vec = -(hbar/2) m_vec/|m_vec|, antiparallel to
// the moment. Both magnitudes are fixed by postulate.
struct PointState {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 m_vec = Vec3::Zero();
  Vec3 l_vec = Vec3::Zero();
  Real charge = 0.0;  // -e for the electron
};

// spin_axis n: m_vec = -mu n, l_vec = (hbar/2) n, matching the sphere model.
PointState make_point_state(const PhysParams& p, const Vec3& spin_axis,
                            const Vec3& position = Vec3::Zero(),
                            const Vec3& velocity = Vec3::Zero());

void validate_state(const PointState& s, const PhysParams& p);

struct PointForceOptions {
  // The moment term of the force law is often quoted with an extra 1/c that
  // is dimensionally inconsistent in Gaussian units; when true (default) the
  // gradient term enters without it, so a pure moment in the SG field feels
  // F = mu * eta * z_hat for m_vec = -mu z_hat.
  bool consistency_c_fix = true;
};

// F = q E + (q/c) v x B + grad(m.B)   (third term multiplied by 1/c when
// consistency_c_fix is false, reproducing the quoted form verbatim).
Vec3 point_force(const PointState& s, const PhysParams& p,
                 const AnalyticEMField& f, const PointForceOptions& opt = {});

// tau = m x B at the particle position.
Vec3 point_torque(const PointState& s, const AnalyticEMField& f);

// U = -m.B at the particle position.
Real point_potential(const PointState& s, const AnalyticEMField& f);

struct PointTrajectory {
  std::vector<Real> times;
  std::vector<PointState> states;
};

// Fixed-step RK4 on (position, velocity, m_vec); |m_vec| renormalized to mu
// each step and l_vec slaved antiparallel. Requires
// dt <= 0.05 * (2 pi / omega_larmor).
PointTrajectory integrate_point(const PointState& s0, const PhysParams& p,
                                const AnalyticEMField& f, Real t_end, Real dt,
                                const PointForceOptions& opt = {});

// Columns: t, position x/y/z, velocity x/y/z, m_vec x/y/z.
void write_point_csv(std::ostream& os, const PointTrajectory& traj);
void write_point_csv(const std::string& path, const PointTrajectory& traj);

}  // namespace sg
