#pragma once

#include <functional>
#include <vector>

#include "sg/types.hpp"
#include "sg/units.hpp"

namespace sg {

// Closed-form electromagnetic field bundle. b_jacobian returns d(B_i)/d(x_j),
// used for the analytic grad(m.B) force on dipoles.
struct AnalyticEMField {
  std::function<Vec3(const Vec3&)> b_at;
  std::function<Vec3(const Vec3&)> a_at;
  std::function<Vec3(const Vec3&)> e_at;
  std::function<Real(const Vec3&)> phi_at;
  std::function<Mat3(const Vec3&)> b_jacobian;
};

// Stern-Gerlach field: B = eta*x xhat + (B0 - eta*z) zhat, A = (B0*x - eta*x*z) yhat,
// E = 0, phi = 0. Divergence-free and curl(A) = B at every point.
AnalyticEMField sg_field(const PhysParams& p);

// All members identically zero (field-free region).
AnalyticEMField zero_field();

// grad(m.B) evaluated through the field's Jacobian: (J_B)^T m.
Vec3 grad_m_dot_b(const AnalyticEMField& f, const Vec3& m, const Vec3& x);

// Same field observed in a frame rotated by rot: B'(x) = rot*B(rot^T x), etc.
AnalyticEMField rotated(const AnalyticEMField& f, const Mat3& rot);

struct PotentialConsistencyReport {
  Real max_curl_residual;  // max |curl_h(A) - B|
  Real max_div_residual;   // max |div_h B|
};

// Centered-difference consistency of the bundle at the sample points.
PotentialConsistencyReport check_potential_consistency(
    const AnalyticEMField& f, const std::vector<Vec3>& samples, Real h);

}  // namespace sg
