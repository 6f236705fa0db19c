#include "sg/fields.hpp"

#include <stdexcept>

namespace sg {

AnalyticEMField sg_field(const PhysParams& p) {
  validate_params(p);
  const Real B0 = p.B0, eta = p.eta;
  AnalyticEMField f;
  f.b_at = [B0, eta](const Vec3& x) {
    return Vec3(eta * x.x(), 0.0, B0 - eta * x.z());
  };
  f.a_at = [B0, eta](const Vec3& x) {
    return Vec3(0.0, B0 * x.x() - eta * x.x() * x.z(), 0.0);
  };
  f.e_at = [](const Vec3&) { return Vec3::Zero().eval(); };
  f.phi_at = [](const Vec3&) { return 0.0; };
  f.b_jacobian = [eta](const Vec3&) {
    Mat3 j = Mat3::Zero();
    j(0, 0) = eta;
    j(2, 2) = -eta;
    return j;
  };
  return f;
}

AnalyticEMField zero_field() {
  AnalyticEMField f;
  f.b_at = [](const Vec3&) { return Vec3::Zero().eval(); };
  f.a_at = [](const Vec3&) { return Vec3::Zero().eval(); };
  f.e_at = [](const Vec3&) { return Vec3::Zero().eval(); };
  f.phi_at = [](const Vec3&) { return 0.0; };
  f.b_jacobian = [](const Vec3&) { return Mat3::Zero().eval(); };
  return f;
}

Vec3 grad_m_dot_b(const AnalyticEMField& f, const Vec3& m, const Vec3& x) {
  return f.b_jacobian(x).transpose() * m;
}

AnalyticEMField rotated(const AnalyticEMField& f, const Mat3& rot) {
  const Mat3 rt = rot.transpose();
  AnalyticEMField g;
  g.b_at = [f, rot, rt](const Vec3& x) { return (rot * f.b_at(rt * x)).eval(); };
  g.a_at = [f, rot, rt](const Vec3& x) { return (rot * f.a_at(rt * x)).eval(); };
  g.e_at = [f, rot, rt](const Vec3& x) { return (rot * f.e_at(rt * x)).eval(); };
  g.phi_at = [f, rt](const Vec3& x) { return f.phi_at(rt * x); };
  g.b_jacobian = [f, rot, rt](const Vec3& x) {
    return (rot * f.b_jacobian(rt * x) * rt).eval();
  };
  return g;
}

PotentialConsistencyReport check_potential_consistency(
    const AnalyticEMField& f, const std::vector<Vec3>& samples, Real h) {
  if (!(h > 0.0)) throw std::invalid_argument("step h must be positive");
  auto partial = [h](const std::function<Vec3(const Vec3&)>& fn, const Vec3& x,
                     int axis) {
    Vec3 dp = Vec3::Zero(), dm = Vec3::Zero();
    dp[axis] = h;
    dm[axis] = -h;
    return ((fn(x + dp) - fn(x + dm)) / (2.0 * h)).eval();
  };
  PotentialConsistencyReport rep{0.0, 0.0};
  for (const Vec3& x : samples) {
    const Vec3 dax = partial(f.a_at, x, 0);
    const Vec3 day = partial(f.a_at, x, 1);
    const Vec3 daz = partial(f.a_at, x, 2);
    const Vec3 curl_a(day.z() - daz.y(), daz.x() - dax.z(), dax.y() - day.x());
    const Vec3 dbx = partial(f.b_at, x, 0);
    const Vec3 dby = partial(f.b_at, x, 1);
    const Vec3 dbz = partial(f.b_at, x, 2);
    const Real div_b = dbx.x() + dby.y() + dbz.z();
    rep.max_curl_residual =
        std::max(rep.max_curl_residual, (curl_a - f.b_at(x)).norm());
    rep.max_div_residual = std::max(rep.max_div_residual, std::abs(div_b));
  }
  return rep;
}

}  // namespace sg
