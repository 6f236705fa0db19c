#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sg/fields.hpp"
#include "sg/rigid_sphere.hpp"
#include "sg/units.hpp"

using namespace sg;

namespace {
PhysParams defaults() { return PhysParams{}; }
}  // namespace

TEST_CASE("sphere state carries the postulated magnitudes") {
  const PhysParams p = defaults();
  const DerivedScales ds = derive_scales(p);
  const SphereState s = make_sphere_state(p, Vec3::UnitZ());
  CHECK(s.mu == doctest::Approx(ds.mu).epsilon(1e-15));
  CHECK(s.radius == p.R);
  CHECK(s.charge == doctest::Approx(-p.charge_e).epsilon(1e-15));
  CHECK((s.m_vec() - Vec3(0, 0, -ds.mu)).norm() < 1e-18);
  CHECK_NOTHROW(validate_state(s));

  SphereState bad = s;
  bad.spin_axis = Vec3(0, 0, 2.0);
  CHECK_THROWS_AS(validate_state(bad), std::invalid_argument);
}

TEST_CASE("current and momentum densities at a hand-checked point") {
  const PhysParams p = defaults();  // mu c = 1/2 in these units
  const SphereState s = make_sphere_state(p, Vec3::UnitZ());
  const Vec3 x(0.5, 0.0, 0.0);

  // J = (15 mu c / 4 pi R^5) (r x n): coefficient 15/(8 pi) here.
  const Vec3 J = sphere_current_density(s, p, x);
  CHECK(J.x() == 0.0);
  CHECK(J.y() == doctest::Approx(-15.0 / (8.0 * pi) * 0.5).epsilon(1e-13));
  CHECK(J.z() == 0.0);

  // G = -(15 hbar / 16 pi R^5) (r x n).
  const Vec3 G = sphere_momentum_density(s, p, x);
  CHECK(G.y() == doctest::Approx(15.0 / (32.0 * pi)).epsilon(1e-13));

  // Outside the sphere both vanish.
  CHECK(sphere_current_density(s, p, Vec3(1.2, 0, 0)).norm() == 0.0);
  CHECK(sphere_momentum_density(s, p, Vec3(0, 1.01, 0)).norm() == 0.0);
}

TEST_CASE("quadratures recover the designed moment and spin") {
  const PhysParams p = defaults();
  const DerivedScales ds = derive_scales(p);
  const SphereState s = make_sphere_state(p, Vec3::UnitZ());
  const Grid3 g(64, 1.5 * p.R);

  const Vec3 m = magnetic_moment_quadrature(s, p, g);
  CHECK((m - Vec3(0, 0, -ds.mu)).norm() / ds.mu < 0.02);

  const Vec3 L = angular_momentum_quadrature(s, p, g);
  CHECK((L - Vec3(0, 0, 0.5)).norm() / 0.5 < 0.02);

  SUBCASE("the box must contain the sphere") {
    CHECK_THROWS_AS(magnetic_moment_quadrature(s, p, Grid3(16, 0.9 * p.R)),
                    std::invalid_argument);
  }
}

TEST_CASE("force and torque quadratures match the dipole closed forms") {
  const PhysParams p = defaults();
  const AnalyticEMField f = sg_field(p);

  // mu * eta = 3 exactly with the default field multiples of c.
  const SphereState sz = make_sphere_state(p, Vec3::UnitZ());
  const Vec3 F = sphere_total_force(sz, p, f, Grid3(48, 1.2 * p.R));
  CHECK((F - Vec3(0, 0, 3.0)).norm() / 3.0 < 1e-2);

  // Closed form through the Jacobian is exact.
  const Vec3 Fc = potential_force(sz.m_vec(), f, sz.center);
  CHECK((Fc - Vec3(0, 0, 3.0)).norm() < 1e-12);
  CHECK(potential_energy(sz.m_vec(), f, sz.center) ==
        doctest::Approx(300.0).epsilon(1e-12));  // -m.B = mu B0

  // x-up spin: torque mu B0 y_hat = 300 y_hat.
  const SphereState sx = make_sphere_state(p, Vec3::UnitX());
  const Vec3 tau = sphere_torque(sx, p, f, Grid3(48, 1.2 * p.R));
  CHECK((tau - Vec3(0, 300.0, 0)).norm() / 300.0 < 1e-2);
}

TEST_CASE("edge momentum density speed gates the model") {
  PhysParams p = defaults();
  const SubluminalReport ok = validate_subluminal(p);
  CHECK(ok.equator_speed == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(ok.ok);

  p.R = 0.005;  // 5 hbar/(4 m R) = 250 > c
  const SubluminalReport bad = validate_subluminal(p);
  CHECK(bad.equator_speed == doctest::Approx(250.0).epsilon(1e-12));
  CHECK_FALSE(bad.ok);
}

TEST_CASE("spin precesses at 2 mu B0 / hbar in a homogeneous field") {
  PhysParams p = defaults();
  p.eta = 0.0;
  const AnalyticEMField f = sg_field(p);
  const DerivedScales ds = derive_scales(p);
  const Real period = 2.0 * pi / ds.omega_larmor;

  const SphereState s0 = make_sphere_state(p, Vec3::UnitX());
  const auto traj = integrate_rigid(s0, p, f, period / 4.0, period / 500.0);
  const Vec3 n_end = traj.states.back().spin_axis;
  // Quarter turn, counterclockwise about +z.
  CHECK((n_end - Vec3(0, 1, 0)).norm() < 1e-9);
  // No net force in a homogeneous field.
  CHECK(traj.states.back().momentum.norm() < 1e-12);

  SUBCASE("step cap enforces precession resolution") {
    CHECK_THROWS_AS(integrate_rigid(s0, p, f, period, 0.2 * period),
                    std::invalid_argument);
  }
}

TEST_CASE("field interval transfers the designed momentum impulse") {
  const PhysParams p = defaults();
  const AnalyticEMField f = sg_field(p);
  const DerivedScales ds = derive_scales(p);
  const Real dt = 0.05 * 2.0 * pi / ds.omega_larmor;
  const SphereState s0 = make_sphere_state(p, Vec3::UnitZ());
  const auto traj = integrate_rigid(s0, p, f, p.dt_field, dt);
  CHECK((traj.states.back().momentum - Vec3(0, 0, 3.0)).norm() / 3.0 < 1e-3);
}

TEST_CASE("trajectory CSV carries the documented columns") {
  PhysParams p = defaults();
  p.eta = 0.0;
  const AnalyticEMField f = sg_field(p);
  const DerivedScales ds = derive_scales(p);
  const Real period = 2.0 * pi / ds.omega_larmor;
  const auto traj = integrate_rigid(make_sphere_state(p, Vec3::UnitX()), p, f,
                                    period / 10.0, period / 100.0);
  std::ostringstream os;
  write_rigid_csv(os, traj);
  CHECK(os.str().substr(0, 31) == "t,cx,cy,cz,px,py,pz,nx,ny,nz\n0,");
}
