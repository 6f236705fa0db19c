#include "sg/grid.hpp"

#include <stdexcept>

namespace sg {

namespace {

void require_dims(const Grid3& g, std::int64_t min_nodes) {
  for (int a = 0; a < 3; ++a) {
    if (g.dims[a] < min_nodes)
      throw std::invalid_argument("grid needs >= 3 nodes per axis");
    if (!(g.halfwidth[a] > 0.0))
      throw std::invalid_argument("grid halfwidth must be positive");
  }
}

// d/d(axis) of one component, second order everywhere.
template <typename Getter>
Real deriv(const Grid3& g, Getter f, std::int64_t ix, std::int64_t iy,
           std::int64_t iz, int axis) {
  std::int64_t i[3] = {ix, iy, iz};
  const std::int64_t n = g.dims[axis];
  const Real h = g.spacing(axis);
  auto at = [&](std::int64_t k) {
    std::int64_t j[3] = {i[0], i[1], i[2]};
    j[axis] = k;
    return f(j[0], j[1], j[2]);
  };
  const std::int64_t k = i[axis];
  if (k == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
  if (k == n - 1)
    return (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h);
  return (at(k + 1) - at(k - 1)) / (2.0 * h);
}

}  // namespace

ScalarGridField sample_scalar(const std::function<Real(const Vec3&)>& f,
                              const Grid3& g) {
  ScalarGridField out{g, Eigen::ArrayXd(g.size())};
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz)
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy)
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix)
        out.values[g.index(ix, iy, iz)] = f(g.node(ix, iy, iz));
  return out;
}

VecGridField sample_field(const std::function<Vec3(const Vec3&)>& f,
                          const Grid3& g) {
  VecGridField out{g, Eigen::Matrix<Real, Eigen::Dynamic, 3>(g.size(), 3)};
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz)
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy)
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix)
        out.values.row(g.index(ix, iy, iz)) = f(g.node(ix, iy, iz)).transpose();
  return out;
}

Real integrate(const ScalarGridField& f) {
  return f.values.sum() * f.grid.cell_volume();
}

Vec3 integrate(const VecGridField& f) {
  return f.values.colwise().sum().transpose() * f.grid.cell_volume();
}

ScalarGridField grid_divergence(const VecGridField& v) {
  const Grid3& g = v.grid;
  require_dims(g, 3);
  ScalarGridField out{g, Eigen::ArrayXd(g.size())};
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz)
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy)
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix) {
        Real div = 0.0;
        for (int a = 0; a < 3; ++a)
          div += deriv(
              g,
              [&](std::int64_t jx, std::int64_t jy, std::int64_t jz) {
                return v.values(g.index(jx, jy, jz), a);
              },
              ix, iy, iz, a);
        out.values[g.index(ix, iy, iz)] = div;
      }
  return out;
}

VecGridField grid_curl(const VecGridField& v) {
  const Grid3& g = v.grid;
  require_dims(g, 3);
  VecGridField out{g, Eigen::Matrix<Real, Eigen::Dynamic, 3>(g.size(), 3)};
  auto comp = [&](std::int64_t jx, std::int64_t jy, std::int64_t jz, int c) {
    return v.values(g.index(jx, jy, jz), c);
  };
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz)
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy)
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix) {
        auto d = [&](int c, int axis) {
          return deriv(
              g,
              [&](std::int64_t jx, std::int64_t jy, std::int64_t jz) {
                return comp(jx, jy, jz, c);
              },
              ix, iy, iz, axis);
        };
        const std::int64_t n = g.index(ix, iy, iz);
        out.values(n, 0) = d(2, 1) - d(1, 2);
        out.values(n, 1) = d(0, 2) - d(2, 0);
        out.values(n, 2) = d(1, 0) - d(0, 1);
      }
  return out;
}

Real max_abs_interior(const ScalarGridField& f) {
  const Grid3& g = f.grid;
  require_dims(g, 3);
  Real m = 0.0;
  for (std::int64_t iz = 1; iz < g.dims[2] - 1; ++iz)
    for (std::int64_t iy = 1; iy < g.dims[1] - 1; ++iy)
      for (std::int64_t ix = 1; ix < g.dims[0] - 1; ++ix)
        m = std::max(m, std::abs(f.values[g.index(ix, iy, iz)]));
  return m;
}

Real max_norm_interior(const VecGridField& f) {
  const Grid3& g = f.grid;
  require_dims(g, 3);
  Real m = 0.0;
  for (std::int64_t iz = 1; iz < g.dims[2] - 1; ++iz)
    for (std::int64_t iy = 1; iy < g.dims[1] - 1; ++iy)
      for (std::int64_t ix = 1; ix < g.dims[0] - 1; ++ix)
        m = std::max(m, f.values.row(g.index(ix, iy, iz)).norm());
  return m;
}

}  // namespace sg
