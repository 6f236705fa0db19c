#include "sg/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "sg/config.hpp"
#include "sg/detector.hpp"
#include "sg/dirac.hpp"
#include "sg/fields.hpp"
#include "sg/pauli.hpp"
#include "sg/point_particle.hpp"
#include "sg/rigid_sphere.hpp"
#include "sg/scenario.hpp"

namespace sg {
namespace {

struct Ctx {
  Profile profile;
  int break_id;
  std::string out_dir;
  PhysParams p;
  DerivedScales ds;
  AnalyticEMField field;

  // Resolution of the quantum-field grids; the fast profile reduces it where
  // the criterion's tolerance remains attainable.
  std::int64_t qn() const { return profile == Profile::fast ? 32 : 64; }

  // Self-test hook: a zeroed tolerance makes the criterion fail.
  Real tol(int id, Real nominal) const {
    return id == break_id ? 0.0 : nominal;
  }
};

std::string num(Real v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

Real rel_err(const Vec3& v, const Vec3& expected, Real floor) {
  return (v - expected).norm() / std::max(expected.norm(), floor);
}

// Least-squares slope of the unwrapped phase angle against time.
Real fit_omega(const std::vector<Real>& ts, const std::vector<Real>& phase) {
  std::vector<Real> u(phase.size());
  u[0] = phase[0];
  for (std::size_t i = 1; i < phase.size(); ++i) {
    Real d = phase[i] - phase[i - 1];
    d -= 2.0 * pi * std::round(d / (2.0 * pi));
    u[i] = u[i - 1] + d;
  }
  Real tm = 0.0, pm = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    tm += ts[i];
    pm += u[i];
  }
  tm /= static_cast<Real>(ts.size());
  pm /= static_cast<Real>(ts.size());
  Real sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxy += (ts[i] - tm) * (u[i] - pm);
    sxx += (ts[i] - tm) * (ts[i] - tm);
  }
  return sxy / sxx;
}

GaussianPacketSpec packet_spec(const PhysParams& p, Real theta, Real phi) {
  GaussianPacketSpec spec;
  spec.d = p.d;
  spec.spin = Vec2c(Complex(std::cos(theta / 2.0), 0.0),
                    std::exp(iu * phi) * std::sin(theta / 2.0));
  return spec;
}

// 1: sphere moment quadrature converges to -mu z_hat.
CriterionResult crit_sphere_moment(const Ctx& c) {
  CriterionResult r{1, "sphere-moment-convergence", false, "", 0.0};
  const SphereState s = make_sphere_state(c.p, Vec3::UnitZ());
  const Vec3 expect = s.m_vec();
  Real err[2];
  int i = 0;
  for (std::int64_t n : {64, 128}) {
    const Vec3 m = magnetic_moment_quadrature(s, c.p, Grid3(n, 1.5 * c.p.R));
    err[i++] = (m - expect).norm() / expect.norm();
  }
  const Real tol = c.tol(1, 2e-2);
  r.pass = err[0] <= tol && err[1] <= tol && err[1] <= 0.5 * err[0];
  r.detail = "err64=" + num(err[0]) + " err128=" + num(err[1]) + " (tol " +
             num(tol) + ", second error at most half the first)";
  return r;
}

// 2: angular momentum quadrature converges to (hbar/2) z_hat.
CriterionResult crit_sphere_angular_momentum(const Ctx& c) {
  CriterionResult r{2, "sphere-angular-momentum-convergence", false, "", 0.0};
  const SphereState s = make_sphere_state(c.p, Vec3::UnitZ());
  const Vec3 expect = 0.5 * c.p.hbar * Vec3::UnitZ();
  Real err[2];
  int i = 0;
  for (std::int64_t n : {64, 128}) {
    const Vec3 l = angular_momentum_quadrature(s, c.p, Grid3(n, 1.5 * c.p.R));
    err[i++] = (l - expect).norm() / expect.norm();
  }
  const Real tol = c.tol(2, 2e-2);
  r.pass = err[0] <= tol && err[1] <= tol && err[1] <= 0.5 * err[0];
  r.detail = "err64=" + num(err[0]) + " err128=" + num(err[1]) + " (tol " +
             num(tol) + ", second error at most half the first)";
  return r;
}

// 3: all three z-up force routes give mu * eta * z_hat.
CriterionResult crit_three_model_force(const Ctx& c) {
  CriterionResult r{3, "three-model-force-agreement", false, "", 0.0};
  const Vec3 expect(0.0, 0.0, c.ds.mu * c.p.eta);
  const Real floor = c.ds.mu * c.p.eta;

  // Sphere quadrature needs the tight high-resolution box to beat 1e-3; it
  // is cheap, so both profiles run it at full resolution.
  const SphereState s = make_sphere_state(c.p, Vec3::UnitZ());
  const Real es = rel_err(
      sphere_total_force(s, c.p, c.field, Grid3(128, 1.2 * c.p.R)), expect,
      floor);

  const PointState ps = make_point_state(c.p, Vec3::UnitZ());
  const Real ep = rel_err(point_force(ps, c.p, c.field), expect, floor);

  const Grid3 g(c.qn(), 6.0 * c.p.d);
  const SpinorField4 psi = prepared_state(PreparedState::z_up_pre, c.p, g);
  const Real ed =
      rel_err(integrate(dirac_force_density(psi, c.field, c.p)), expect,
              floor);

  const Real tol_cl = c.tol(3, 1e-3);
  const Real tol_f = c.tol(3, 1e-4);
  r.pass = es <= tol_cl && ep <= tol_cl && ed <= tol_f;
  r.detail = "sphere=" + num(es) + " point=" + num(ep) + " field=" + num(ed) +
             " (tol " + num(tol_cl) + ", field " + num(tol_f) + ")";
  return r;
}

// 4: x-up torque quadrature, and the precession frequency of both classical
// integrators in a homogeneous field.
CriterionResult crit_torque_precession(const Ctx& c) {
  CriterionResult r{4, "torque-and-larmor-precession", false, "", 0.0};
  const SphereState sx = make_sphere_state(c.p, Vec3::UnitX());
  const Vec3 tau_expect(0.0, c.ds.mu * c.p.B0, 0.0);
  const Real et =
      rel_err(sphere_torque(sx, c.p, c.field, Grid3(64, 1.2 * c.p.R)),
              tau_expect, c.ds.mu * c.p.B0);

  PhysParams pu = c.p;
  pu.eta = 0.0;  // homogeneous field: pure precession
  const AnalyticEMField fu = sg_field(pu);
  const Real omega = c.ds.omega_larmor;
  const Real period = 2.0 * pi / omega;

  const auto rigid =
      integrate_rigid(make_sphere_state(pu, Vec3::UnitX()), pu, fu,
                      3.0 * period, period / 100.0);
  std::vector<Real> ph;
  ph.reserve(rigid.states.size());
  for (const auto& st : rigid.states) {
    ph.push_back(std::atan2(st.spin_axis.y(), st.spin_axis.x()));
  }
  const Real er = std::abs(fit_omega(rigid.times, ph) - omega) / omega;

  const auto point =
      integrate_point(make_point_state(pu, Vec3::UnitX()), pu, fu,
                      3.0 * period, period / 100.0);
  ph.clear();
  for (const auto& st : point.states) {
    ph.push_back(std::atan2(st.m_vec.y(), st.m_vec.x()));
  }
  const Real epp = std::abs(fit_omega(point.times, ph) - omega) / omega;

  const Real tol_t = c.tol(4, 1e-2);
  const Real tol_w = c.tol(4, 1e-3);
  r.pass = et <= tol_t && er <= tol_w && epp <= tol_w;
  r.detail = "torque=" + num(et) + " (tol " + num(tol_t) +
             ") freq sphere=" + num(er) + " point=" + num(epp) + " (tol " +
             num(tol_w) + ")";
  return r;
}

// 5: the phase kick transfers <p> = mu eta dt z_hat to a z-up packet.
CriterionResult crit_kick_momentum(const Ctx& c) {
  CriterionResult r{5, "kick-momentum-transfer", false, "", 0.0};
  const Grid3 g(c.qn(), 6.0 * c.p.d);
  const SpinorField2 kicked =
      sg_phase_kick(make_gaussian(packet_spec(c.p, 0.0, 0.0), g), c.p);
  const Vec3 expect(0.0, 0.0, c.ds.p_kick);
  const Real err =
      rel_err(momentum_expectation(kicked, c.p), expect, c.ds.p_kick);
  const Real tol = c.tol(5, 1e-6);
  r.pass = err <= tol;
  r.detail = "rel err=" + num(err) + " (tol " + num(tol) + ")";
  return r;
}

// 6: with a homogeneous field 200x stronger than the gradient sampled across
// the packet, the full interaction matrix and the phase-only kick agree.
CriterionResult crit_weak_field_kick(const Ctx& c) {
  CriterionResult r{6, "weak-field-kick-equivalence", false, "", 0.0};
  PhysParams p6 = c.p;
  p6.eta = 2.0 * p6.c * 8e-4;  // kappa = mu eta d dt / hbar = 8e-4
  p6.B0 = 200.0 * p6.eta * p6.d;
  const Grid3 g(c.qn(), 6.0 * p6.d);
  const SpinorField2 chi =
      make_gaussian(packet_spec(p6, pi / 2.0, 0.0), g);
  const SpinorField2 full = sg_phase_kick(chi, p6, true);
  const SpinorField2 phase = sg_phase_kick(chi, p6, false);
  const Real diff = l2_diff(full, phase);
  const Real tol = c.tol(6, 1e-3);
  r.pass = diff <= tol;
  r.detail = "L2 diff=" + num(diff) + " (tol " + num(tol) +
             ", B0/(eta d) = 200)";
  return r;
}

// 7: spectral free evolution matches the closed form and preserves the norm.
CriterionResult crit_spectral_vs_analytic(const Ctx& c) {
  CriterionResult r{7, "spectral-vs-analytic-evolution", false, "", 0.0};
  PhysParams p7 = c.p;
  p7.eta = p7.c;  // kick momentum 0.5 hbar/d: modest drift over the run
  const Real t = p7.mass * p7.d * p7.d / p7.hbar;
  const Grid3 g(64, 8.0 * p7.d);
  const GaussianPacketSpec spec = packet_spec(p7, pi / 2.0, 0.0);
  const SpinorField2 kicked = sg_phase_kick(make_gaussian(spec, g), p7);
  const SpinorField2 spectral = free_evolve_spectral(kicked, p7, t);
  const SpinorField2 analytic =
      free_evolve_analytic(with_kick(spec, p7), p7, t, g);
  const Real rel = l2_diff(spectral, analytic) / std::sqrt(norm2(analytic));
  const Real drift = std::abs(norm2(spectral) - norm2(kicked));
  const Real tol_l2 = c.tol(7, 1e-6);
  const Real tol_n = c.tol(7, 1e-10);
  r.pass = rel <= tol_l2 && drift <= tol_n;
  r.detail = "rel L2=" + num(rel) + " (tol " + num(tol_l2) +
             ") norm drift=" + num(drift) + " (tol " + num(tol_n) + ")";
  return r;
}

// 8: after free flight the x-up kicked packet shows two equal-weight lumps
// at +/- v_kick * t.
CriterionResult crit_two_lump_separation(const Ctx& c) {
  CriterionResult r{8, "two-lump-separation", false, "", 0.0};
  const Real t = 2.0 * c.p.mass * c.p.d * c.p.d / c.p.hbar;
  const Grid3 g(c.qn(), 14.0 * c.p.d);
  const SpinorField2 evolved = free_evolve_analytic(
      with_kick(packet_spec(c.p, pi / 2.0, 0.0), c.p), c.p, t, g);
  const auto cl = cluster_z_marginal(density(evolved));
  const Real expect = c.ds.v_kick * t;
  if (cl.k != 2) {
    r.detail = "expected 2 clusters, found " + std::to_string(cl.k);
    return r;
  }
  const Real ec = std::max(std::abs(cl.center[0] + expect),
                           std::abs(cl.center[1] - expect)) /
                  expect;
  const Real ew = std::max(std::abs(cl.weight[0] - 0.5),
                           std::abs(cl.weight[1] - 0.5));
  const Real tol_c = c.tol(8, 1e-2);
  const Real tol_w = c.tol(8, 1e-3);
  r.pass = ec <= tol_c && ew <= tol_w;
  r.detail = "center err=" + num(ec) + " (tol " + num(tol_c) +
             ") weight err=" + num(ew) + " (tol " + num(tol_w) + ")";
  return r;
}

// 9: lifting the kicked z-up packet reproduces the closed-form post-field
// state node-wise. The spectral derivative needs the 64^3 band and a 7d box
// in both profiles; anything smaller leaves truncation residue above the
// tolerance.
CriterionResult crit_lift_matches_prepared(const Ctx& c) {
  CriterionResult r{9, "lift-matches-prepared-state", false, "", 0.0};
  const Grid3 g(64, 7.0 * c.p.d);
  const SpinorField2 kicked =
      sg_phase_kick(make_gaussian(packet_spec(c.p, 0.0, 0.0), g), c.p);
  const SpinorField4 lifted = lift_to_dirac(kicked, zero_field(), c.p);
  const SpinorField4 ref = prepared_state(PreparedState::z_up_post, c.p, g);
  const Real err = max_rel_diff(lifted, ref);
  const Real tol = c.tol(9, 1e-10);
  r.pass = err <= tol;
  r.detail = "max node rel diff=" + num(err) + " (tol " + num(tol) + ")";
  return r;
}

// 10: the closed-form post-field current is divergence-free at second order.
CriterionResult crit_current_continuity(const Ctx& c) {
  CriterionResult r{10, "current-continuity-convergence", false, "", 0.0};
  PhysParams p10 = c.p;
  p10.eta = 0.8 * p10.c;  // moderate kick keeps the phase pattern resolved
  Real metric[3];
  int i = 0;
  for (std::int64_t n : {32, 64, 128}) {
    const Grid3 g(n, 2.0 * p10.d);
    const VecGridField J = post_field_current_xup(p10, g);
    metric[i++] = max_abs_interior(grid_divergence(J)) * p10.d /
                  max_norm_interior(J);
  }
  const Real tol = c.tol(10, 1e-3);
  r.pass = metric[2] <= tol && metric[0] / metric[1] >= 3.0 &&
           metric[1] / metric[2] >= 3.0;
  r.detail = "normalized max |div J| = " + num(metric[0]) + " -> " +
             num(metric[1]) + " -> " + num(metric[2]) + " (last tol " +
             num(tol) + ", each step down by >= 3)";
  return r;
}

// 11: integrated charge fractions in the two half-spaces follow
// cos^2(theta/2), sin^2(theta/2) across the spin sweep.
CriterionResult crit_spin_fraction_sweep(const Ctx& c) {
  CriterionResult r{11, "spin-fraction-sweep", false, "", 0.0};
  const Real thetas[] = {0.0,      pi / 6.0, pi / 4.0, pi / 3.0,
                         pi / 2.0, 2.0 * pi / 3.0, pi};
  const Real t = 1.5 * c.p.mass * c.p.d * c.p.d / c.p.hbar;
  const Grid3 g(c.qn(), 10.0 * c.p.d);
  const std::int64_t plane = g.dims[0] * g.dims[1];
  Real max_err = 0.0;
  for (Real theta : thetas) {
    const SpinorField4 evolved = evolve_nr_analytic(
        with_kick(packet_spec(c.p, theta, 0.0), c.p), c.p, t, g);
    const ScalarGridField q = charge_density(evolved, c.p);
    Real upper = 0.0, lower = 0.0;
    for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
      const Real sum = q.values.segment(iz * plane, plane).sum();
      (g.coord(2, iz) > 0.0 ? upper : lower) += sum;
    }
    const Real frac_up = upper / (upper + lower);
    const auto [fu, fd] = lump_fractions(theta);
    max_err = std::max(max_err, std::abs(frac_up - fu));
    max_err = std::max(max_err, std::abs((1.0 - frac_up) - fd));
  }
  const Real tol = c.tol(11, 1e-3);
  r.pass = max_err <= tol;
  r.detail = "max fraction err=" + num(max_err) + " over 7 angles (tol " +
             num(tol) + ")";
  return r;
}

// 12: the four-model sweep reproduces the reference outcome classification
// and emits the table artifact.
CriterionResult crit_outcome_table(const Ctx& c) {
  CriterionResult r{12, "outcome-table-verdicts", false, "", 0.0};
  ScenarioConfig cfg;
  cfg.grid_n = 64;
  cfg.out_dir = c.out_dir;
  const json t1 = run_table1(cfg);
  const bool matches = t1.at("matches_reference").get<bool>();
  std::ostringstream os;
  for (const auto& [name, v] : t1.at("verdicts").items()) {
    os << name << "(unique=" << (v.at("unique").get<bool>() ? 1 : 0)
       << ",discrete=" << (v.at("discrete").get<bool>() ? 1 : 0)
       << (v.at("uniqueness_requires_interpretation").get<bool>()
               ? ",interpretation-caveat"
               : "")
       << ") ";
  }
  r.pass = matches && c.break_id != 12;
  r.detail = os.str() +
             (matches ? "match reference; table artifact written"
                      : "MISMATCH vs reference");
  if (c.break_id == 12) r.detail += " [forced failure hook]";
  return r;
}

// 13: transverse spin after the kick follows the rotation-times-envelope
// closed form across a sweep of field durations.
CriterionResult crit_spin_x_envelope(const Ctx& c) {
  CriterionResult r{13, "spin-x-envelope-sweep", false, "", 0.0};
  const Grid3 g(64, 6.0 * c.p.d);
  const SpinorField2 chi = make_gaussian(packet_spec(c.p, pi / 2.0, 0.0), g);
  Real max_err = 0.0;
  for (int j = 1; j <= 10; ++j) {
    PhysParams pj = c.p;
    pj.dt_field = 0.05 * static_cast<Real>(j);
    const DerivedScales dsj = derive_scales(pj);
    const Real sx = spin_expectation(sg_phase_kick(chi, pj)).x();
    const Real alpha = dsj.mu * pj.B0 * pj.dt_field / pj.hbar;
    const Real kappa = dsj.p_kick * pj.d / pj.hbar;
    const Real oracle = std::cos(2.0 * alpha) * std::exp(-kappa * kappa);
    max_err = std::max(max_err, std::abs(sx - oracle));
  }
  const Real tol = c.tol(13, 1e-4);
  r.pass = max_err <= tol;
  r.detail = "max |<sigma_x>-oracle|=" + num(max_err) +
             " over 10 durations (tol " + num(tol) + ")";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            std::ostream& log) {
  Ctx c{opt.profile, opt.break_criterion, opt.out_dir,
        PhysParams{},  {},                {}};
  validate_params(c.p);
  c.ds = derive_scales(c.p);
  c.field = sg_field(c.p);

  using Fn = CriterionResult (*)(const Ctx&);
  struct Row {
    Fn fn;
    bool in_fast;
  };
  const Row rows[] = {
      {crit_sphere_moment, false},
      {crit_sphere_angular_momentum, false},
      {crit_three_model_force, true},
      {crit_torque_precession, false},
      {crit_kick_momentum, true},
      {crit_weak_field_kick, true},
      {crit_spectral_vs_analytic, false},
      {crit_two_lump_separation, true},
      {crit_lift_matches_prepared, true},
      {crit_current_continuity, false},
      {crit_spin_fraction_sweep, true},
      {crit_outcome_table, false},
      {crit_spin_x_envelope, false},
  };

  // Wall-clock budgets (seconds) where the criterion carries one.
  const std::map<int, double> budget{{1, 5.0}, {3, 30.0}, {4, 20.0},
                                     {7, 60.0}};

  std::vector<CriterionResult> out;
  for (const Row& row : rows) {
    if (opt.profile == Profile::fast && !row.in_fast) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = row.fn(c);
    r.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    const auto it = budget.find(r.id);
    if (it != budget.end() && r.seconds > it->second) {
      r.pass = false;
      std::ostringstream os;
      os << " [exceeded " << it->second << " s budget]";
      r.detail += os.str();
    }
    std::ostringstream line;
    line << (r.pass ? "[PASS]" : "[FAIL]") << " criterion "
         << std::setfill('0') << std::setw(2) << r.id << std::setfill(' ')
         << " " << std::left << std::setw(36) << r.name << std::right << " ("
         << std::fixed << std::setprecision(2) << r.seconds << " s) "
         << r.detail << "\n";
    log << line.str() << std::flush;
    out.push_back(std::move(r));
  }
  return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return !results.empty();
}

std::string failure_summary(const std::vector<CriterionResult>& results) {
  std::string s;
  for (const auto& r : results) {
    if (r.pass) continue;
    if (!s.empty()) s += ", ";
    s += std::to_string(r.id) + ":" + r.name;
  }
  return s;
}

}  // namespace sg
