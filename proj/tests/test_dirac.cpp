#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <tuple>

#include "sg/dirac.hpp"
#include "sg/fields.hpp"
#include "sg/units.hpp"

using namespace sg;

namespace {
PhysParams defaults() { return PhysParams{}; }

GaussianPacketSpec spec_with_spin(const Vec2c& spin) {
  GaussianPacketSpec s;
  s.spin = spin;
  return s;
}
}  // namespace

TEST_CASE("Dirac matrices satisfy the algebra") {
  const DiracMatrices& d = dirac_matrices();
  const Mat4c I = Mat4c::Identity();
  for (const Mat4c* a : {&d.alpha_x, &d.alpha_y, &d.alpha_z, &d.beta}) {
    CHECK(((*a) * (*a) - I).norm() == 0.0);
    CHECK(((*a) - a->adjoint()).norm() == 0.0);
  }
  CHECK((d.alpha_x * d.alpha_y + d.alpha_y * d.alpha_x).norm() == 0.0);
  CHECK((d.alpha_y * d.alpha_z + d.alpha_z * d.alpha_y).norm() == 0.0);
  CHECK((d.alpha_x * d.beta + d.beta * d.alpha_x).norm() == 0.0);
  CHECK((d.alpha_z * d.beta + d.beta * d.alpha_z).norm() == 0.0);
}

TEST_CASE("z-basis weights of a tilted spin") {
  auto [wu, wd] = lump_fractions(0.0);
  CHECK(wu == 1.0);
  CHECK(wd == 0.0);
  std::tie(wu, wd) = lump_fractions(pi / 2.0);
  CHECK(wu == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(wd == doctest::Approx(0.5).epsilon(1e-14));
  std::tie(wu, wd) = lump_fractions(pi / 3.0, 1.2);  // azimuth irrelevant
  CHECK(wu == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(wd == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("prepared packet: lower pair is the gradient correction") {
  const PhysParams p = defaults();
  const Grid3 g(17, 6.0);
  const SpinorField4 psi = prepared_state(PreparedState::z_up_pre, p, g);
  CHECK(psi.factored_phase == 0.0);

  const Real w = 1.0 / (2.0 * p.c);  // hbar/(2 m c d^2) at the defaults
  for (const auto& node : {std::array<std::int64_t, 3>{4, 9, 12},
                           std::array<std::int64_t, 3>{8, 8, 8},
                           std::array<std::int64_t, 3>{13, 2, 6}}) {
    const std::int64_t row = g.index(node[0], node[1], node[2]);
    const Vec3 x = g.node(node[0], node[1], node[2]);
    const Real gauss = std::pow(pi, -0.75) * std::exp(-x.squaredNorm() / 2.0);
    CHECK(std::abs(psi.values(row, 0) - gauss) < 1e-15);
    CHECK(std::abs(psi.values(row, 1)) == 0.0);
    CHECK(std::abs(psi.values(row, 2) - iu * w * x[2] * gauss) < 1e-16);
    CHECK(std::abs(psi.values(row, 3) -
                   w * Complex{-x[1], x[0]} * gauss) < 1e-16);
  }

  SUBCASE("box gate") {
    CHECK_THROWS_AS(prepared_state(PreparedState::z_up_pre, p, Grid3(16, 4.0)),
                    std::invalid_argument);
  }
}

TEST_CASE("squared norm picks up (3/8) epsilon^2 from the lower pair") {
  const PhysParams p = defaults();
  const DerivedScales ds = derive_scales(p);
  const Grid3 g(64, 6.0);
  const Real expect = 1.0 + 0.375 * ds.epsilon_rel * ds.epsilon_rel;

  const SpinorField4 psi = prepared_state(PreparedState::z_up_pre, p, g);
  CHECK(norm2(psi) == doctest::Approx(expect).epsilon(1e-10));

  // Total charge is -e times that.
  CHECK(integrate(charge_density(psi, p)) ==
        doctest::Approx(-expect).epsilon(1e-10));

  // The kick multiplies the large components by pure phases but also shifts
  // the small pair by s = p_kick/(2 m c): the packet now moves, so the
  // squared norm gains exactly s^2 on top of the rest-frame correction.
  const SpinorField4 post = prepared_state(PreparedState::z_up_post, p, g);
  const Real s = ds.p_kick / (2.0 * p.mass * p.c);
  CHECK(norm2(post) == doctest::Approx(expect + s * s).epsilon(1e-10));
}

TEST_CASE("packet current circulates about the spin axis") {
  const PhysParams p = defaults();
  const DerivedScales ds = derive_scales(p);
  const Grid3 g(32, 5.0);
  const Real coef = 2.0 * ds.mu * p.c;  // current scale, d = 1

  const VecGridField J =
      current_density(prepared_state(PreparedState::z_up_pre, p, g), p);
  VecGridField closed;
  closed.grid = g;
  closed.values.resize(g.size(), 3);
  std::int64_t row = 0;
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix, ++row) {
        const Vec3 x = g.node(ix, iy, iz);
        const Real rho = std::pow(pi, -1.5) * std::exp(-x.squaredNorm());
        closed.values.row(row) = coef * rho * Vec3(x[1], -x[0], 0.0);
      }
    }
  }
  CHECK(max_rel_diff(J, closed) < 1e-12);
}

TEST_CASE("impulse adds a longitudinal current, transverse unchanged") {
  const PhysParams p = defaults();
  const DerivedScales ds = derive_scales(p);
  const Grid3 g(24, 5.0);
  const VecGridField Jpre =
      current_density(prepared_state(PreparedState::z_up_pre, p, g), p);
  const VecGridField Jpost =
      current_density(prepared_state(PreparedState::z_up_post, p, g), p);

  const Real jz_coef = ds.mu * p.eta * p.dt_field / p.mass;  // e = 1
  Real worst = 0.0;
  std::int64_t row = 0;
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix, ++row) {
        const Vec3 x = g.node(ix, iy, iz);
        const Real rho = std::pow(pi, -1.5) * std::exp(-x.squaredNorm());
        worst = std::max(worst, std::abs(Jpost.values(row, 0) - Jpre.values(row, 0)));
        worst = std::max(worst, std::abs(Jpost.values(row, 1) - Jpre.values(row, 1)));
        worst = std::max(worst,
                         std::abs(Jpost.values(row, 2) - (-jz_coef * rho)));
      }
    }
  }
  CHECK(worst / Jpost.values.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("transverse-spin current: bilinear route equals the trig route") {
  const PhysParams p = defaults();
  const Grid3 g(32, 5.0);
  const VecGridField J =
      current_density(prepared_state(PreparedState::x_up_post, p, g), p);
  CHECK(max_rel_diff(J, post_field_current_xup(p, g)) < 1e-12);
}

TEST_CASE("numerical lift reproduces the closed-form spinors") {
  const PhysParams p = defaults();
  const Grid3 g(64, 7.0);
  const AnalyticEMField none = zero_field();

  const SpinorField4 lz = lift_to_dirac(make_gaussian({}, g), none, p);
  CHECK(max_rel_diff(lz, prepared_state(PreparedState::z_up_pre, p, g)) < 1e-10);
  CHECK(lz.factored_phase == 0.0);

  const GaussianPacketSpec xspec =
      spec_with_spin(Vec2c(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)));
  const SpinorField4 lx = lift_to_dirac(make_gaussian(xspec, g), none, p);
  CHECK(max_rel_diff(lx, prepared_state(PreparedState::x_up_pre, p, g)) < 1e-10);

  // Same through the impulse: lift of the kicked packet.
  const SpinorField4 lk =
      lift_to_dirac(sg_phase_kick(make_gaussian(xspec, g), p), none, p);
  const SpinorField4 ref = prepared_state(PreparedState::x_up_post, p, g);
  CHECK(max_rel_diff(lk, ref) < 1e-10);
  CHECK(ref.factored_phase ==
        doctest::Approx(p.mass * p.c * p.c * p.dt_field).epsilon(1e-15));

  SUBCASE("the reduction refuses relativistic packets") {
    PhysParams tight = defaults();
    tight.d = 0.05;
    CHECK_THROWS_AS(
        lift_to_dirac(make_gaussian({.d = 0.05}, Grid3(8, 1.0)), none, tight),
        std::domain_error);
  }
}

TEST_CASE("free evolution: spectral and closed-form reductions agree") {
  const PhysParams p = defaults();
  const Grid3 g(32, 7.0);
  const Real t = 0.3;
  const GaussianPacketSpec spec;  // unkicked

  const SpinorField4 a = evolve_nr_analytic(spec, p, t, g);
  const SpinorField4 n =
      evolve_nr(lift_to_dirac(make_gaussian(spec, g), zero_field(), p), p, t);
  CHECK(max_rel_diff(n, a) < 1e-4);

  // Rest-energy bookkeeping: angle advances by m c^2 t / hbar.
  const Real mc2 = p.mass * p.c * p.c;
  CHECK(n.factored_phase == doctest::Approx(mc2 * t).epsilon(1e-14));
  CHECK(a.factored_phase == doctest::Approx(mc2 * t).epsilon(1e-14));
  const SpinorField4 ak = evolve_nr_analytic(with_kick(spec, p), p, t, g);
  CHECK(ak.factored_phase ==
        doctest::Approx(mc2 * (p.dt_field + t)).epsilon(1e-14));
}

TEST_CASE("upper pair extraction and mismatch guard") {
  const PhysParams p = defaults();
  const Grid3 g(16, 6.0);
  const SpinorField4 psi = prepared_state(PreparedState::z_up_pre, p, g);
  const SpinorField2 u = upper_pair(psi);
  CHECK((u.values.col(0) - psi.values.col(0)).norm() == 0.0);
  CHECK((u.values.col(1) - psi.values.col(1)).norm() == 0.0);

  const SpinorField4 other = prepared_state(PreparedState::z_up_pre, p, Grid3(18, 6.0));
  CHECK_THROWS_AS(max_rel_diff(psi, other), std::invalid_argument);
}
