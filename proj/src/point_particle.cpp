#include "sg/point_particle.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "sg/rigid_sphere.hpp"  // potential_force / potential_energy

namespace sg {

PointState make_point_state(const PhysParams& p, const Vec3& spin_axis,
                            const Vec3& position, const Vec3& velocity) {
  const Vec3 n = spin_axis.normalized();
  PointState s;
  s.position = position;
  s.velocity = velocity;
  s.m_vec = -derive_scales(p).mu * n;
  s.l_vec = 0.5 * p.hbar * n;
  s.charge = -p.charge_e;
  validate_state(s, p);
  return s;
}

void validate_state(const PointState& s, const PhysParams& p) {
  const Real mu = derive_scales(p).mu;
  if (std::abs(s.m_vec.norm() - mu) > 1e-12 * mu) {
    throw std::invalid_argument("point state: |m_vec| must equal mu");
  }
  const Real l = 0.5 * p.hbar;
  if (std::abs(s.l_vec.norm() - l) > 1e-12 * l) {
    throw std::invalid_argument("point state: |l_vec| must equal hbar/2");
  }
  if ((s.l_vec.normalized() + s.m_vec.normalized()).norm() > 1e-12) {
    throw std::invalid_argument(
        "point state: l_vec must be antiparallel to m_vec");
  }
}

Vec3 point_force(const PointState& s, const PhysParams& p,
                 const AnalyticEMField& f, const PointForceOptions& opt) {
  const Vec3 x = s.position;
  Vec3 F = s.charge * f.e_at(x) +
           (s.charge / p.c) * s.velocity.cross(f.b_at(x));
  Vec3 grad_mb = f.b_jacobian(x).transpose() * s.m_vec;
  F += opt.consistency_c_fix ? grad_mb : grad_mb / p.c;
  return F;
}

Vec3 point_torque(const PointState& s, const AnalyticEMField& f) {
  return s.m_vec.cross(f.b_at(s.position));
}

Real point_potential(const PointState& s, const AnalyticEMField& f) {
  return -s.m_vec.dot(f.b_at(s.position));
}

PointTrajectory integrate_point(const PointState& s0, const PhysParams& p,
                                const AnalyticEMField& f, Real t_end, Real dt,
                                const PointForceOptions& opt) {
  validate_state(s0, p);
  if (!(dt > 0.0) || t_end < 0.0) {
    throw std::invalid_argument("integrate_point: need dt > 0 and t_end >= 0");
  }
  const DerivedScales ds = derive_scales(p);
  if (ds.omega_larmor > 0.0 &&
      dt > 0.05 * (2.0 * pi / ds.omega_larmor) * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "integrate_point: dt too large to resolve precession "
        "(need dt <= 0.05 * 2*pi/omega_larmor)");
  }
  const Real gamma = 2.0 * ds.mu / p.hbar;  // gyromagnetic ratio e/(m c)

  struct Deriv {
    Vec3 dx, dv, dm;
  };
  auto rhs = [&](const Vec3& x, const Vec3& v, const Vec3& m) {
    PointState tmp = s0;
    tmp.position = x;
    tmp.velocity = v;
    tmp.m_vec = m;
    Deriv d;
    d.dx = v;
    d.dv = point_force(tmp, p, f, opt) / p.mass;
    d.dm = -gamma * m.cross(f.b_at(x));
    return d;
  };

  PointTrajectory traj;
  PointState s = s0;
  Real t = 0.0;
  traj.times.push_back(t);
  traj.states.push_back(s);

  while (t < t_end - 1e-15 * std::max<Real>(1.0, t_end)) {
    const Real h = std::min(dt, t_end - t);
    const Vec3 x0 = s.position, v0 = s.velocity, m0 = s.m_vec;

    const Deriv k1 = rhs(x0, v0, m0);
    const Deriv k2 = rhs(x0 + 0.5 * h * k1.dx, v0 + 0.5 * h * k1.dv,
                         m0 + 0.5 * h * k1.dm);
    const Deriv k3 = rhs(x0 + 0.5 * h * k2.dx, v0 + 0.5 * h * k2.dv,
                         m0 + 0.5 * h * k2.dm);
    const Deriv k4 = rhs(x0 + h * k3.dx, v0 + h * k3.dv, m0 + h * k3.dm);

    s.position = x0 + (h / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    s.velocity = v0 + (h / 6.0) * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
    Vec3 m = m0 + (h / 6.0) * (k1.dm + 2.0 * k2.dm + 2.0 * k3.dm + k4.dm);
    s.m_vec = ds.mu * m.normalized();
    s.l_vec = -0.5 * p.hbar * m.normalized();
    t += h;
    traj.times.push_back(t);
    traj.states.push_back(s);
  }
  return traj;
}

void write_point_csv(std::ostream& os, const PointTrajectory& traj) {
  os << "t,x,y,z,vx,vy,vz,mx,my,mz\n";
  os.precision(17);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const PointState& s = traj.states[i];
    os << traj.times[i];
    for (int a = 0; a < 3; ++a) os << ',' << s.position[a];
    for (int a = 0; a < 3; ++a) os << ',' << s.velocity[a];
    for (int a = 0; a < 3; ++a) os << ',' << s.m_vec[a];
    os << '\n';
  }
}

void write_point_csv(const std::string& path, const PointTrajectory& traj) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_point_csv(os, traj);
}

}  // namespace sg
