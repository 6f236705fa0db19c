#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sg/pauli.hpp"
#include "sg/units.hpp"

using namespace sg;

namespace {
PhysParams defaults() { return PhysParams{}; }

GaussianPacketSpec x_up_spec() {
  GaussianPacketSpec s;
  s.spin = Vec2c(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  return s;
}
}  // namespace

TEST_CASE("Pauli matrices satisfy the algebra") {
  const PauliMatrices& s = pauli();
  CHECK((s.sigma_x * s.sigma_x - Mat2c::Identity()).norm() == 0.0);
  CHECK((s.sigma_y * s.sigma_y - Mat2c::Identity()).norm() == 0.0);
  CHECK((s.sigma_z * s.sigma_z - Mat2c::Identity()).norm() == 0.0);
  CHECK((s.sigma_x * s.sigma_y - s.sigma_y * s.sigma_x -
         2.0 * iu * s.sigma_z).norm() == 0.0);
  CHECK((s.sigma_x * s.sigma_y + s.sigma_y * s.sigma_x).norm() == 0.0);
  CHECK((s.sigma_x - s.sigma_x.adjoint()).norm() == 0.0);
  CHECK((s.sigma_y - s.sigma_y.adjoint()).norm() == 0.0);
}

TEST_CASE("Gaussian packet construction") {
  const Grid3 g(41, 6.0);  // odd count: one node sits exactly at the origin
  GaussianPacketSpec spec;  // z-up, d = 1
  const SpinorField2 chi = make_gaussian(spec, g);

  CHECK(norm2(chi) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(chi.values(g.index(20, 20, 20), 0) - std::pow(pi, -0.75)) <
        1e-15);
  CHECK(chi.values(g.index(20, 20, 20), 1) == Complex{0.0, 0.0});

  SUBCASE("box must leave five widths of margin") {
    CHECK_THROWS_AS(make_gaussian(spec, Grid3(16, 4.0)), std::invalid_argument);
    GaussianPacketSpec off = spec;
    off.center = Vec3(0, 0, 2.0);
    CHECK_THROWS_AS(make_gaussian(off, Grid3(16, 6.0)), std::invalid_argument);
  }
  SUBCASE("spin amplitudes must be normalized") {
    GaussianPacketSpec bad;
    bad.spin = Vec2c(1.0, 0.5);
    CHECK_THROWS_AS(make_gaussian(bad, g), std::invalid_argument);
  }
}

TEST_CASE("phase kick equals the matrix-exponential route where it should") {
  PhysParams p = defaults();
  p.B0 = 10.0;
  p.eta = 0.5;
  p.dt_field = 0.1;
  const DerivedScales ds = derive_scales(p);
  const Real alpha = ds.mu * p.B0 * p.dt_field;
  const Real beta = ds.mu * p.eta * p.dt_field;

  const Grid3 g(12, 6.0);
  const SpinorField2 chi0 = make_gaussian(x_up_spec(), g);
  const SpinorField2 diag = sg_phase_kick(chi0, p, false);
  const SpinorField2 full = sg_phase_kick(chi0, p, true);

  const PauliMatrices& s = pauli();
  for (const auto& node : {std::array<std::int64_t, 3>{2, 5, 8},
                           std::array<std::int64_t, 3>{9, 1, 3},
                           std::array<std::int64_t, 3>{6, 6, 6}}) {
    const std::int64_t row = g.index(node[0], node[1], node[2]);
    const Vec3 x = g.node(node[0], node[1], node[2]);

    // Diagonal route: pure phases, conjugate between components.
    const Complex ph = std::exp(iu * (beta * x[2] - alpha));
    CHECK(std::abs(diag.values(row, 0) - ph * chi0.values(row, 0)) < 1e-15);
    CHECK(std::abs(diag.values(row, 1) -
                   std::conj(ph) * chi0.values(row, 1)) < 1e-15);

    // Independent route: truncated series for exp(-i H dt / hbar) with
    // H = mu (eta x sigma_x + (B0 - eta z) sigma_z).
    const Mat2c H = ds.mu * (p.eta * x[0] * s.sigma_x +
                             (p.B0 - p.eta * x[2]) * s.sigma_z);
    const Mat2c M = -iu * p.dt_field / p.hbar * H;
    Mat2c U = Mat2c::Identity(), term = Mat2c::Identity();
    for (int k = 1; k < 30; ++k) {
      term = term * M / static_cast<Real>(k);
      U += term;
    }
    const Vec2c v(chi0.values(row, 0), chi0.values(row, 1));
    const Vec2c w = U * v;
    CHECK(std::abs(full.values(row, 0) - w[0]) < 1e-13 * v.norm());
    CHECK(std::abs(full.values(row, 1) - w[1]) < 1e-13 * v.norm());
  }

  CHECK(norm2(full) == doctest::Approx(norm2(chi0)).epsilon(1e-12));
  CHECK(norm2(diag) == doctest::Approx(norm2(chi0)).epsilon(1e-12));
}

TEST_CASE("kick transfers mu eta dt of momentum along z") {
  const PhysParams p = defaults();
  const Grid3 g(48, 6.0);
  const SpinorField2 up = sg_phase_kick(make_gaussian({}, g), p);
  Real resid = 0.0;
  const Vec3 pk = momentum_expectation(up, p, &resid);
  CHECK((pk - Vec3(0, 0, 3.0)).norm() / 3.0 < 1e-6);
  CHECK(resid < 1e-9);

  // Down-spin packet recoils the other way.
  GaussianPacketSpec down;
  down.spin = Vec2c(0.0, 1.0);
  const Vec3 pd = momentum_expectation(sg_phase_kick(make_gaussian(down, g), p), p);
  CHECK((pd - Vec3(0, 0, -3.0)).norm() / 3.0 < 1e-6);
}

TEST_CASE("kick dephases the transverse spin by exp(-kappa^2)") {
  const PhysParams p = defaults();
  const DerivedScales ds = derive_scales(p);
  const Real alpha = ds.mu * p.B0 * p.dt_field;  // 300
  const Real kappa = ds.mu * p.eta * p.dt_field; // 3 (d = 1)
  const Grid3 g(48, 6.0);

  const SpinorField2 chi0 = make_gaussian(x_up_spec(), g);
  CHECK((spin_expectation(chi0) - Vec3(1, 0, 0)).norm() < 1e-12);

  const Vec3 s = spin_expectation(sg_phase_kick(chi0, p));
  const Real env = std::exp(-kappa * kappa);
  CHECK(std::abs(s[0] - std::cos(2.0 * alpha) * env) < 1e-9);
  CHECK(std::abs(s[1] - std::sin(2.0 * alpha) * env) < 1e-9);
  CHECK(std::abs(s[2]) < 1e-12);
}

TEST_CASE("closed-form evolution reduces to the initial packet at t = 0") {
  const PhysParams p = defaults();
  const Grid3 g(32, 7.0);
  const GaussianPacketSpec spec = x_up_spec();

  CHECK(l2_diff(free_evolve_analytic(spec, p, 0.0, g), make_gaussian(spec, g)) <
        1e-14);

  // Kicked spec at t = 0 equals the phase kick applied to the packet.
  const GaussianPacketSpec kicked = with_kick(spec, p);
  CHECK(l2_diff(free_evolve_analytic(kicked, p, 0.0, g),
                sg_phase_kick(make_gaussian(spec, g), p)) < 1e-13);
}

TEST_CASE("closed-form evolution conserves norm and momentum") {
  const PhysParams p = defaults();
  const Grid3 g(48, 8.0);
  const GaussianPacketSpec kicked = with_kick({}, p);  // z-up
  const SpinorField2 chi = free_evolve_analytic(kicked, p, 0.4, g);
  CHECK(norm2(chi) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK((momentum_expectation(chi, p) - Vec3(0, 0, 3.0)).norm() / 3.0 < 1e-6);
  // Drifted by v t = 1.2 along z: density is maximal near z = 1.2.
  const ScalarGridField rho = density(chi);
  std::int64_t imax = 0;
  rho.values.maxCoeff(&imax);
  const std::int64_t iz = imax / (g.dims[0] * g.dims[1]);
  CHECK(std::abs(g.coord(2, iz) - 1.2) < 2.0 * g.spacing(2));
}

TEST_CASE("spectral propagator matches the closed form") {
  const PhysParams p = defaults();
  const Grid3 g(32, 7.0);
  const GaussianPacketSpec spec;  // unkicked: no drift toward the boundary
  const Real t = 0.5;

  const SpinorField2 ref = free_evolve_analytic(spec, p, t, g);
  const SpinorField2 sp = free_evolve_spectral(make_gaussian(spec, g), p, t);
  CHECK(l2_diff(sp, ref) < 1e-5);

  // Chunked propagation composes exactly.
  const SpinorField2 sp3 = free_evolve_spectral(make_gaussian(spec, g), p, t, 3);
  CHECK(l2_diff(sp3, sp) < 1e-12);

  SUBCASE("escape to the boundary is detected") {
    const Grid3 tight(24, 5.0);
    const SpinorField2 kicked =
        sg_phase_kick(make_gaussian(spec, tight), p);  // drifts at v = 3
    CHECK_THROWS_AS(free_evolve_spectral(kicked, p, 1.0), std::runtime_error);
  }
}

TEST_CASE("densities and diffs") {
  const PhysParams p = defaults();
  const Grid3 g(16, 6.0);
  const SpinorField2 chi = make_gaussian(x_up_spec(), g);
  const ScalarGridField rho = density(chi);
  const ScalarGridField r0 = component_density(chi, 0);
  const ScalarGridField r1 = component_density(chi, 1);
  CHECK((rho.values - r0.values - r1.values).cwiseAbs().maxCoeff() < 1e-16);
  CHECK_THROWS_AS(component_density(chi, 2), std::invalid_argument);
  CHECK(l2_diff(chi, chi) == 0.0);

  SpinorField2 other = make_gaussian(x_up_spec(), Grid3(18, 6.0));
  CHECK_THROWS_AS(l2_diff(chi, other), std::invalid_argument);
  (void)p;
}
