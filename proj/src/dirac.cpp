#include "sg/dirac.hpp"

#include <cmath>
#include <stdexcept>

#include "sg/fft3.hpp"

namespace sg {

const DiracMatrices& dirac_matrices() {
  static const DiracMatrices dm = [] {
    DiracMatrices d;
    const PauliMatrices& s = pauli();
    const Mat2c Z = Mat2c::Zero(), I = Mat2c::Identity();
    auto block4 = [](const Mat2c& a, const Mat2c& b, const Mat2c& c,
                     const Mat2c& d4) {
      Mat4c m;
      m << a, b, c, d4;
      return m;
    };
    d.alpha_x = block4(Z, s.sigma_x, s.sigma_x, Z);
    d.alpha_y = block4(Z, s.sigma_y, s.sigma_y, Z);
    d.alpha_z = block4(Z, s.sigma_z, s.sigma_z, Z);
    d.beta = block4(I, Z, Z, -I);
    return d;
  }();
  return dm;
}

SpinorField4 lift_to_dirac(const SpinorField2& chi_u, const AnalyticEMField& f,
                           const PhysParams& p) {
  const RelativisticReport gate = validate_nonrelativistic(p);
  if (!gate.ok) {
    throw std::domain_error(
        "lift_to_dirac: outside the non-relativistic regime (hbar/(m c d) = " +
        std::to_string(gate.epsilon_rel) + ")");
  }
  const Grid3& g = chi_u.grid;
  const std::int64_t n = g.size();

  // Spectral gradients of both upper components.
  std::array<Eigen::VectorXd, 3> kaxis;
  for (int a = 0; a < 3; ++a) {
    kaxis[a].resize(g.dims[a]);
    for (std::int64_t j = 0; j < g.dims[a]; ++j) {
      kaxis[a][j] = fft_freq(j, g.dims[a], g.spacing(a));
    }
  }
  std::array<std::array<Eigen::VectorXcd, 3>, 2> grad;  // [component][axis]
  Eigen::VectorXcd hat(n), work(n);
  for (int comp = 0; comp < 2; ++comp) {
    hat = chi_u.values.col(comp);
    fft3(hat, g.dims, false);
    for (int a = 0; a < 3; ++a) {
      work = hat;
      std::int64_t row = 0;
      for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
        for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
          for (std::int64_t ix = 0; ix < g.dims[0]; ++ix, ++row) {
            const Real k = (a == 0) ? kaxis[0][ix]
                                    : (a == 1) ? kaxis[1][iy] : kaxis[2][iz];
            work[row] *= iu * k;
          }
        }
      }
      fft3(work, g.dims, true);
      grad[comp][a] = work;
    }
  }

  SpinorField4 psi;
  psi.grid = g;
  psi.values.resize(n, 4);
  const PauliMatrices& s = pauli();
  const Real denom = 2.0 * p.mass * p.c * p.c;
  std::int64_t row = 0;
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix, ++row) {
        const Vec3 x = g.node(ix, iy, iz);
        const Vec2c u(chi_u.values(row, 0), chi_u.values(row, 1));
        Vec2c l = Vec2c::Zero();
        for (int a = 0; a < 3; ++a) {
          const Vec2c da(grad[0][a][row], grad[1][a][row]);
          const Mat2c& sig = (a == 0) ? s.sigma_x : (a == 1) ? s.sigma_y : s.sigma_z;
          l += -iu * p.hbar * p.c * (sig * da);
        }
        const Vec3 A = f.a_at(x);
        if (A.squaredNorm() > 0.0) {
          const Mat2c sigA =
              A[0] * s.sigma_x + A[1] * s.sigma_y + A[2] * s.sigma_z;
          l += p.charge_e * (sigA * u);
        }
        const Real phi = f.phi_at(x);
        if (phi != 0.0) l -= p.charge_e * phi * u;
        l /= denom;
        psi.values(row, 0) = u[0];
        psi.values(row, 1) = u[1];
        psi.values(row, 2) = l[0];
        psi.values(row, 3) = l[1];
      }
    }
  }
  return psi;
}

SpinorField4 prepared_state(PreparedState which, const PhysParams& p,
                            const Grid3& g) {
  for (int a = 0; a < 3; ++a) {
    if (g.halfwidth[a] < 5.0 * p.d) {
      throw std::invalid_argument("prepared_state: box halfwidth must be >= 5d");
    }
  }
  const DerivedScales ds = derive_scales(p);
  const bool post =
      which == PreparedState::z_up_post || which == PreparedState::x_up_post;
  const bool xup =
      which == PreparedState::x_up_pre || which == PreparedState::x_up_post;

  const Real alpha = post ? ds.mu * p.B0 * p.dt_field / p.hbar : 0.0;
  const Real beta = post ? ds.mu * p.eta * p.dt_field / p.hbar : 0.0;
  const Real w = p.hbar / (2.0 * p.mass * p.c * p.d * p.d);  // gradient scale
  const Real shift = post ? ds.mu * p.eta * p.dt_field / (2.0 * p.mass * p.c) : 0.0;
  const Real d2 = p.d * p.d;
  const Real norm = std::pow(pi * d2, -0.75);
  const Real amp = xup ? 1.0 / std::sqrt(2.0) : 1.0;

  SpinorField4 psi;
  psi.grid = g;
  psi.values.resize(g.size(), 4);
  psi.factored_phase = post ? p.mass * p.c * p.c * p.dt_field / p.hbar : 0.0;

  std::int64_t row = 0;
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix, ++row) {
        const Vec3 x = g.node(ix, iy, iz);
        const Real gauss = norm * std::exp(-x.squaredNorm() / (2.0 * d2));
        const Complex up_phase = std::exp(iu * (beta * x[2] - alpha));
        const Complex dn_phase = std::conj(up_phase);

        // z-spin-up branch: upper (1,0); lower from the zero-potential lift
        // of exp(i beta z) * gaussian.
        const Complex b0 = up_phase * gauss;
        const Complex b2 = up_phase * gauss * Complex{shift, w * x[2]};
        const Complex b3 = up_phase * gauss * w * Complex{-x[1], x[0]};  // i x - y

        if (!xup) {
          psi.values(row, 0) = b0;
          psi.values(row, 1) = 0.0;
          psi.values(row, 2) = b2;
          psi.values(row, 3) = b3;
          continue;
        }

        // z-spin-down branch with the conjugate kick phases.
        const Complex c1 = dn_phase * gauss;
        const Complex c2 = dn_phase * gauss * w * Complex{x[1], x[0]};  // i x + y
        const Complex c3 = dn_phase * gauss * Complex{shift, -w * x[2]};

        psi.values(row, 0) = amp * b0;
        psi.values(row, 1) = amp * c1;
        psi.values(row, 2) = amp * (b2 + c2);
        psi.values(row, 3) = amp * (b3 + c3);
      }
    }
  }
  return psi;
}

ScalarGridField charge_density(const SpinorField4& psi, const PhysParams& p) {
  ScalarGridField f;
  f.grid = psi.grid;
  f.values = -p.charge_e * psi.values.rowwise().squaredNorm();
  return f;
}

VecGridField current_density(const SpinorField4& psi, const PhysParams& p) {
  VecGridField f;
  f.grid = psi.grid;
  f.values.resize(psi.values.rows(), 3);
  // psi^dag alpha_i psi = 2 Re(chi_u^dag sigma_i chi_l).
  for (std::int64_t r = 0; r < psi.values.rows(); ++r) {
    const Complex u0 = psi.values(r, 0), u1 = psi.values(r, 1);
    const Complex l0 = psi.values(r, 2), l1 = psi.values(r, 3);
    const Complex a01 = std::conj(u0) * l1, a10 = std::conj(u1) * l0;
    const Complex a00 = std::conj(u0) * l0, a11 = std::conj(u1) * l1;
    const Real ax = 2.0 * (a01 + a10).real();
    const Real ay = 2.0 * (iu * (a10 - a01)).real();
    const Real az = 2.0 * (a00 - a11).real();
    f.values(r, 0) = -p.charge_e * p.c * ax;
    f.values(r, 1) = -p.charge_e * p.c * ay;
    f.values(r, 2) = -p.charge_e * p.c * az;
  }
  return f;
}

VecGridField dirac_force_density(const SpinorField4& psi,
                                 const AnalyticEMField& f, const PhysParams& p) {
  const ScalarGridField rho = charge_density(psi, p);
  const VecGridField J = current_density(psi, p);
  VecGridField out;
  out.grid = psi.grid;
  out.values.resize(J.values.rows(), 3);
  const Grid3& g = psi.grid;
  std::int64_t row = 0;
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix, ++row) {
        const Vec3 x = g.node(ix, iy, iz);
        const Vec3 Jv = J.values.row(row);
        const Vec3 fv = rho.values[row] * f.e_at(x) + Jv.cross(f.b_at(x)) / p.c;
        out.values.row(row) = fv;
      }
    }
  }
  return out;
}

VecGridField post_field_current_xup(const PhysParams& p, const Grid3& g) {
  const DerivedScales ds = derive_scales(p);
  const Real alpha = ds.mu * p.B0 * p.dt_field / p.hbar;
  const Real beta = ds.mu * p.eta * p.dt_field / p.hbar;
  const Real w = p.hbar / (2.0 * p.mass * p.c * p.d * p.d);
  const Real s = ds.mu * p.eta * p.dt_field / (2.0 * p.mass * p.c);
  const Real d2 = p.d * p.d;
  const Real rho_norm = std::pow(pi * d2, -1.5);
  const Real ec2 = 2.0 * p.charge_e * p.c;

  VecGridField out;
  out.grid = g;
  out.values.resize(g.size(), 3);
  std::int64_t row = 0;
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix, ++row) {
        const Vec3 x = g.node(ix, iy, iz);
        const Real rho_g = rho_norm * std::exp(-x.squaredNorm() / d2);
        const Real phi2 = 2.0 * (alpha - beta * x[2]);
        const Real cph = std::cos(phi2), sph = std::sin(phi2);
        out.values(row, 0) = -ec2 * rho_g * (s * cph + w * x[2] * sph);
        out.values(row, 1) = -ec2 * rho_g * (s * sph - w * x[2] * cph);
        out.values(row, 2) = ec2 * rho_g * w * (x[0] * sph - x[1] * cph);
      }
    }
  }
  return out;
}

SpinorField4 evolve_nr(const SpinorField4& psi, const PhysParams& p, Real t,
                       int steps) {
  SpinorField2 u = upper_pair(psi);
  u = free_evolve_spectral(u, p, t, steps);
  SpinorField4 out = lift_to_dirac(u, zero_field(), p);
  out.factored_phase = psi.factored_phase + p.mass * p.c * p.c * t / p.hbar;
  return out;
}

SpinorField4 evolve_nr_analytic(const GaussianPacketSpec& spec,
                                const PhysParams& p, Real t, const Grid3& g) {
  const SpinorField2 u = free_evolve_analytic(spec, p, t, g);
  SpinorField4 out = lift_to_dirac(u, zero_field(), p);
  const Real dt = spec.phase_params ? spec.phase_params->dt : 0.0;
  out.factored_phase = p.mass * p.c * p.c * (dt + t) / p.hbar;
  return out;
}

std::pair<Real, Real> lump_fractions(Real theta, Real /*phi_s*/) {
  const Real cu = std::cos(0.5 * theta), sd = std::sin(0.5 * theta);
  return {cu * cu, sd * sd};
}

Real norm2(const SpinorField4& psi) {
  return psi.values.squaredNorm() * psi.grid.cell_volume();
}

SpinorField2 upper_pair(const SpinorField4& psi) {
  SpinorField2 u;
  u.grid = psi.grid;
  u.values.resize(psi.values.rows(), 2);
  u.values.col(0) = psi.values.col(0);
  u.values.col(1) = psi.values.col(1);
  return u;
}

Real max_rel_diff(const SpinorField4& a, const SpinorField4& b) {
  if (a.values.rows() != b.values.rows()) {
    throw std::invalid_argument("max_rel_diff: mismatched grids");
  }
  const Real scale = b.values.cwiseAbs().maxCoeff();
  if (scale == 0.0) return a.values.cwiseAbs().maxCoeff();
  return (a.values - b.values).cwiseAbs().maxCoeff() / scale;
}

Real max_rel_diff(const VecGridField& a, const VecGridField& b) {
  if (a.values.rows() != b.values.rows()) {
    throw std::invalid_argument("max_rel_diff: mismatched grids");
  }
  const Real scale = b.values.cwiseAbs().maxCoeff();
  if (scale == 0.0) return a.values.cwiseAbs().maxCoeff();
  return (a.values - b.values).cwiseAbs().maxCoeff() / scale;
}

}  // namespace sg
