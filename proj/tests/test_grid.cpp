#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sg/grid.hpp"
#include "sg/types.hpp"

using namespace sg;

TEST_CASE("node layout: cell centers, x-fastest ordering") {
  const Grid3 g(4, 2.0);
  CHECK(g.spacing(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.coord(0, 0) == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(g.coord(0, 3) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(g.size() == 64);
  CHECK(g.cell_volume() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.index(1, 2, 3) == 1 + 4 * (2 + 4 * 3));
  const Vec3 n = g.node(1, 2, 3);
  CHECK(n.x() == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(n.y() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(n.z() == doctest::Approx(1.5).epsilon(1e-14));

  // Degenerate grids are rejected where stencils or quadratures need them.
  VecGridField too_few;
  too_few.grid = Grid3(2, 1.0);
  too_few.values.setZero(too_few.grid.size(), 3);
  CHECK_THROWS_AS(grid_divergence(too_few), std::invalid_argument);
  VecGridField bad_width;
  bad_width.grid = Grid3(8, -1.0);
  bad_width.values.setZero(bad_width.grid.size(), 3);
  CHECK_THROWS_AS(grid_curl(bad_width), std::invalid_argument);
}

TEST_CASE("midpoint quadrature integrates a Gaussian to 1") {
  const Grid3 g(48, 8.0);
  const Real d = 1.0;
  const auto f = sample_scalar(
      [d](const Vec3& x) {
        return std::pow(pi * d * d, -1.5) * std::exp(-x.squaredNorm() / (d * d));
      },
      g);
  CHECK(integrate(f) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("vector integration is component-wise") {
  const Grid3 g(8, 1.0);
  const auto f = sample_field([](const Vec3&) { return Vec3(1.0, 2.0, 3.0); },
                              g);
  const Vec3 total = integrate(f);
  CHECK(total.x() == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(total.y() == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(total.z() == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("centered divergence and curl are exact on quadratics") {
  const Grid3 g(10, 1.3);
  const auto v = sample_field(
      [](const Vec3& x) {
        return Vec3(x.x() * x.x(), x.x() * x.y(), x.y() * x.z());
      },
      g);
  const auto dv = grid_divergence(v);
  for (std::int64_t iz = 0; iz < 10; ++iz) {
    for (std::int64_t iy = 0; iy < 10; ++iy) {
      for (std::int64_t ix = 0; ix < 10; ++ix) {
        const Vec3 x = g.node(ix, iy, iz);
        const Real expect = 3.0 * x.x() + x.y();
        CHECK(dv.values[g.index(ix, iy, iz)] ==
              doctest::Approx(expect).epsilon(1e-10));
      }
    }
  }

  const auto w = sample_field(
      [](const Vec3& x) {
        return Vec3(x.y() * x.y(), x.z() * x.z(), x.x() * x.x());
      },
      g);
  const auto cw = grid_curl(w);
  for (std::int64_t iz = 2; iz < 8; ++iz) {
    for (std::int64_t iy = 2; iy < 8; ++iy) {
      for (std::int64_t ix = 2; ix < 8; ++ix) {
        const Vec3 x = g.node(ix, iy, iz);
        const Vec3 expect = -2.0 * Vec3(x.z(), x.x(), x.y());
        CHECK((cw.values.row(g.index(ix, iy, iz)).transpose() - expect)
                  .norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("interior maxima skip the outermost node layer") {
  const Grid3 g(6, 1.0);
  ScalarGridField f{g, Eigen::ArrayXd::Zero(g.size())};
  f.values[g.index(0, 3, 3)] = 100.0;   // boundary node
  f.values[g.index(3, 3, 3)] = 2.5;     // interior node
  CHECK(max_abs_interior(f) == doctest::Approx(2.5).epsilon(1e-15));

  VecGridField v{g, Eigen::Matrix<Real, Eigen::Dynamic, 3>::Zero(g.size(), 3)};
  v.values(g.index(5, 2, 2), 1) = 50.0;  // boundary
  v.values(g.index(2, 2, 2), 0) = 3.0;
  v.values(g.index(2, 2, 2), 1) = 4.0;
  CHECK(max_norm_interior(v) == doctest::Approx(5.0).epsilon(1e-13));
}
