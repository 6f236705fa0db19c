#include <doctest.h>

#include <stdexcept>

#include "sg/units.hpp"

using namespace sg;

TEST_CASE("default parameters validate and give the designed scales") {
  PhysParams p;
  CHECK_NOTHROW(validate_params(p));
  const DerivedScales ds = derive_scales(p);

  // mu = e hbar / (2 m c); the default field strengths are multiples of c,
  // so the derived kick speed and Larmor frequency are exact integers.
  CHECK(ds.mu == doctest::Approx(1.0 / 274.072).epsilon(1e-15));
  CHECK(ds.omega_larmor == doctest::Approx(600.0).epsilon(1e-13));
  CHECK(ds.epsilon_rel == doctest::Approx(1.0 / 137.036).epsilon(1e-15));
  CHECK(ds.p_kick == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(ds.v_kick == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("parameter validation rejects bad magnitudes") {
  PhysParams p;
  SUBCASE("negative mass") {
    p.mass = -1.0;
    CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
  }
  SUBCASE("zero packet width") {
    p.d = 0.0;
    CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
  }
  SUBCASE("negative gradient") {
    p.eta = -1.0;
    CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
  }
  SUBCASE("atomic mode requires unit constants") {
    p.hbar = 2.0;
    CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
  }
  SUBCASE("zero field strengths are allowed") {
    p.B0 = 0.0;
    p.eta = 0.0;
    CHECK_NOTHROW(validate_params(p));
  }
}

TEST_CASE("raw Gaussian-unit input rescales to atomic units") {
  PhysParams p;
  p.unit_system = UnitSystem::gaussian_cgs_raw;
  p.hbar = 2.0;
  p.mass = 3.0;
  p.charge_e = 5.0;
  p.c = 100.0;
  p.B0 = 7.0;
  p.eta = 0.3;
  p.dt_field = 11.0;
  p.d = 0.4;
  p.R = 0.2;
  CHECK_NOTHROW(validate_params(p));

  const PhysParams q = to_atomic(p);
  CHECK(q.unit_system == UnitSystem::hartree_atomic);
  CHECK(q.hbar == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(q.mass == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(q.charge_e == doctest::Approx(1.0).epsilon(1e-14));

  // Lengths scale by a0 = hbar^2/(m e^2) = 4/75, speeds by e^2/hbar = 12.5.
  CHECK(q.d == doctest::Approx(0.4 * 75.0 / 4.0).epsilon(1e-13));
  CHECK(q.R == doctest::Approx(0.2 * 75.0 / 4.0).epsilon(1e-13));
  CHECK(q.c == doctest::Approx(100.0 / 12.5).epsilon(1e-13));

  // Dimensionless combinations survive the rescaling.
  const DerivedScales a = derive_scales(p);
  const DerivedScales b = derive_scales(q);
  CHECK(b.epsilon_rel == doctest::Approx(a.epsilon_rel).epsilon(1e-12));
  CHECK(a.epsilon_rel == doctest::Approx(2.0 / (3.0 * 100.0 * 0.4)).epsilon(1e-13));
  const Real alpha_in = a.mu * p.B0 * p.dt_field / p.hbar;
  const Real alpha_at = b.mu * q.B0 * q.dt_field / q.hbar;
  CHECK(alpha_at == doctest::Approx(alpha_in).epsilon(1e-12));
  const Real kappa_in = a.mu * p.eta * p.dt_field * p.d / p.hbar;
  const Real kappa_at = b.mu * q.eta * q.dt_field * q.d / q.hbar;
  CHECK(kappa_at == doctest::Approx(kappa_in).epsilon(1e-12));

  SUBCASE("atomic input passes through unchanged") {
    PhysParams h;
    h.B0 = 42.0;
    const PhysParams k = to_atomic(h);
    CHECK(k.B0 == 42.0);
    CHECK(k.c == h.c);
    CHECK(k.d == h.d);
  }
}

TEST_CASE("non-relativistic gate tracks hbar/(m c d)") {
  PhysParams p;
  const RelativisticReport ok = validate_nonrelativistic(p);
  CHECK(ok.ok);
  CHECK(ok.epsilon_rel == doctest::Approx(1.0 / 137.036).epsilon(1e-13));
  CHECK(ok.threshold == 0.1);

  p.d = 0.05;  // narrow packet: lower-pair weight no longer small
  const RelativisticReport bad = validate_nonrelativistic(p);
  CHECK_FALSE(bad.ok);
  CHECK(bad.epsilon_rel > 0.1);
}
