#include "sg/rigid_sphere.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace sg {

namespace {

void require_inside_box(const SphereState& s, const Grid3& g) {
  for (int a = 0; a < 3; ++a) {
    if (std::abs(s.center[a]) + s.radius > g.halfwidth[a] + 1e-12) {
      throw std::invalid_argument("grid box does not contain the sphere");
    }
  }
}

}  // namespace

SphereState make_sphere_state(const PhysParams& p, const Vec3& spin_axis,
                              const Vec3& center, const Vec3& momentum) {
  SphereState s;
  s.center = center;
  s.momentum = momentum;
  s.spin_axis = spin_axis.normalized();
  s.mu = derive_scales(p).mu;
  s.radius = p.R;
  s.charge = -p.charge_e;
  validate_state(s);
  return s;
}

void validate_state(const SphereState& s) {
  if (std::abs(s.spin_axis.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("spin_axis must be a unit vector");
  }
  if (!(s.mu > 0.0) || !(s.radius > 0.0)) {
    throw std::invalid_argument("sphere mu and radius must be positive");
  }
}

Vec3 sphere_current_density(const SphereState& s, const PhysParams& p,
                            const Vec3& x) {
  const Vec3 r = x - s.center;
  if (r.norm() > s.radius) return Vec3::Zero();
  const Real k = 15.0 * s.mu * p.c / (4.0 * pi * std::pow(s.radius, 5));
  return k * r.cross(s.spin_axis);
}

Vec3 sphere_momentum_density(const SphereState& s, const PhysParams& p,
                             const Vec3& x) {
  const Vec3 r = x - s.center;
  if (r.norm() > s.radius) return Vec3::Zero();
  const Real k = -15.0 * p.hbar / (16.0 * pi * std::pow(s.radius, 5));
  return k * r.cross(s.spin_axis);
}

Vec3 magnetic_moment_quadrature(const SphereState& s, const PhysParams& p,
                                const Grid3& g) {
  require_inside_box(s, g);
  Vec3 acc = Vec3::Zero();
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix) {
        const Vec3 x = g.node(ix, iy, iz);
        acc += (x - s.center).cross(sphere_current_density(s, p, x));
      }
    }
  }
  return acc * g.cell_volume() / (2.0 * p.c);
}

Vec3 angular_momentum_quadrature(const SphereState& s, const PhysParams& p,
                                 const Grid3& g) {
  require_inside_box(s, g);
  Vec3 acc = Vec3::Zero();
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix) {
        const Vec3 x = g.node(ix, iy, iz);
        acc += (x - s.center).cross(sphere_momentum_density(s, p, x));
      }
    }
  }
  return acc * g.cell_volume();
}

Vec3 sphere_force_density(const SphereState& s, const PhysParams& p,
                          const AnalyticEMField& f, const Vec3& x) {
  const Vec3 r = x - s.center;
  if (r.norm() > s.radius) return Vec3::Zero();
  const Real rho_q = s.charge / (4.0 / 3.0 * pi * std::pow(s.radius, 3));
  const Vec3 J = sphere_current_density(s, p, x);
  return rho_q * f.e_at(x) + J.cross(f.b_at(x)) / p.c;
}

Vec3 sphere_total_force(const SphereState& s, const PhysParams& p,
                        const AnalyticEMField& f, const Grid3& g) {
  require_inside_box(s, g);
  Vec3 acc = Vec3::Zero();
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix) {
        acc += sphere_force_density(s, p, f, g.node(ix, iy, iz));
      }
    }
  }
  return acc * g.cell_volume();
}

Vec3 sphere_torque(const SphereState& s, const PhysParams& p,
                   const AnalyticEMField& f, const Grid3& g) {
  require_inside_box(s, g);
  Vec3 acc = Vec3::Zero();
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix) {
        const Vec3 x = g.node(ix, iy, iz);
        acc += (x - s.center).cross(sphere_force_density(s, p, f, x));
      }
    }
  }
  return acc * g.cell_volume();
}

Real potential_energy(const Vec3& m_vec, const AnalyticEMField& f,
                      const Vec3& x) {
  return -m_vec.dot(f.b_at(x));
}

Vec3 potential_force(const Vec3& m_vec, const AnalyticEMField& f,
                     const Vec3& x) {
  // grad(m.B) = J_B^T m for the analytic Jacobian of B.
  return f.b_jacobian(x).transpose() * m_vec;
}

namespace {

struct RigidDeriv {
  Vec3 dc, dp, dn;
};

}  // namespace

RigidTrajectory integrate_rigid(const SphereState& s0, const PhysParams& p,
                                const AnalyticEMField& f, Real t_end, Real dt) {
  validate_state(s0);
  if (!(dt > 0.0) || t_end < 0.0) {
    throw std::invalid_argument("integrate_rigid: need dt > 0 and t_end >= 0");
  }
  const Real omega = derive_scales(p).omega_larmor;
  if (omega > 0.0 && dt > 0.05 * (2.0 * pi / omega) * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "integrate_rigid: dt too large to resolve precession "
        "(need dt <= 0.05 * 2*pi/omega_larmor)");
  }

  RigidTrajectory traj;
  SphereState s = s0;
  Real t = 0.0;
  traj.times.push_back(t);
  traj.states.push_back(s);

  auto rhs = [&](const Vec3& c, const Vec3& pm, const Vec3& n) {
    RigidDeriv d;
    d.dc = pm / p.mass;
    d.dp = potential_force(-s0.mu * n, f, c);
    d.dn = -(2.0 * s0.mu / p.hbar) * n.cross(f.b_at(c));
    return d;
  };

  while (t < t_end - 1e-15 * std::max<Real>(1.0, t_end)) {
    const Real h = std::min(dt, t_end - t);
    const Vec3 c0 = s.center, p0 = s.momentum, n0 = s.spin_axis;

    const RigidDeriv k1 = rhs(c0, p0, n0);
    const RigidDeriv k2 = rhs(c0 + 0.5 * h * k1.dc, p0 + 0.5 * h * k1.dp,
                              n0 + 0.5 * h * k1.dn);
    const RigidDeriv k3 = rhs(c0 + 0.5 * h * k2.dc, p0 + 0.5 * h * k2.dp,
                              n0 + 0.5 * h * k2.dn);
    const RigidDeriv k4 = rhs(c0 + h * k3.dc, p0 + h * k3.dp, n0 + h * k3.dn);

    s.center = c0 + (h / 6.0) * (k1.dc + 2.0 * k2.dc + 2.0 * k3.dc + k4.dc);
    s.momentum = p0 + (h / 6.0) * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
    s.spin_axis =
        (n0 + (h / 6.0) * (k1.dn + 2.0 * k2.dn + 2.0 * k3.dn + k4.dn))
            .normalized();
    t += h;
    traj.times.push_back(t);
    traj.states.push_back(s);
  }
  return traj;
}

void write_rigid_csv(std::ostream& os, const RigidTrajectory& traj) {
  os << "t,cx,cy,cz,px,py,pz,nx,ny,nz\n";
  os.precision(17);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const SphereState& s = traj.states[i];
    os << traj.times[i];
    for (int a = 0; a < 3; ++a) os << ',' << s.center[a];
    for (int a = 0; a < 3; ++a) os << ',' << s.momentum[a];
    for (int a = 0; a < 3; ++a) os << ',' << s.spin_axis[a];
    os << '\n';
  }
}

void write_rigid_csv(const std::string& path, const RigidTrajectory& traj) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_rigid_csv(os, traj);
}

SubluminalReport validate_subluminal(const PhysParams& p) {
  SubluminalReport r;
  r.equator_speed = 5.0 * p.hbar / (4.0 * p.mass * p.R);
  r.c = p.c;
  r.ok = r.equator_speed < p.c;
  return r;
}

}  // namespace sg
