#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "sg/types.hpp"

namespace sg {

// Uniform cell-centered grid, symmetric about the origin. Node i along an axis
// sits at -halfwidth + (i + 1/2)*spacing, so odd integrands cancel exactly
// under the midpoint rule.
struct Grid3 {
  std::array<std::int64_t, 3> dims{};
  std::array<Real, 3> halfwidth{};

  Grid3() = default;
  Grid3(std::int64_t n, Real hw) : dims{n, n, n}, halfwidth{hw, hw, hw} {}
  Grid3(std::array<std::int64_t, 3> n, std::array<Real, 3> hw)
      : dims(n), halfwidth(hw) {}

  Real spacing(int axis) const {
    return 2.0 * halfwidth[axis] / static_cast<Real>(dims[axis]);
  }
  Real coord(int axis, std::int64_t i) const {
    return -halfwidth[axis] + (static_cast<Real>(i) + 0.5) * spacing(axis);
  }
  Vec3 node(std::int64_t ix, std::int64_t iy, std::int64_t iz) const {
    return Vec3(coord(0, ix), coord(1, iy), coord(2, iz));
  }
  // x-fastest linear index
  std::int64_t index(std::int64_t ix, std::int64_t iy, std::int64_t iz) const {
    return ix + dims[0] * (iy + dims[1] * iz);
  }
  std::int64_t size() const { return dims[0] * dims[1] * dims[2]; }
  Real cell_volume() const { return spacing(0) * spacing(1) * spacing(2); }
};

struct ScalarGridField {
  Grid3 grid;
  Eigen::ArrayXd values;  // one per node, x-fastest
};

struct VecGridField {
  Grid3 grid;
  Eigen::Matrix<Real, Eigen::Dynamic, 3> values;  // row per node, x-fastest
};

ScalarGridField sample_scalar(const std::function<Real(const Vec3&)>& f,
                              const Grid3& g);
VecGridField sample_field(const std::function<Vec3(const Vec3&)>& f,
                          const Grid3& g);

// Midpoint-rule quadratures: sum(values) * cell volume.
Real integrate(const ScalarGridField& f);
Vec3 integrate(const VecGridField& f);

// Centered differences in the interior, second-order one-sided at boundaries.
// Rejects grids thinner than 3 nodes on any axis.
ScalarGridField grid_divergence(const VecGridField& v);
VecGridField grid_curl(const VecGridField& v);

// Max |values| over interior nodes only (all boundary layers excluded).
Real max_abs_interior(const ScalarGridField& f);
Real max_norm_interior(const VecGridField& f);

}  // namespace sg
