#include "sg/pauli.hpp"

#include <cmath>
#include <stdexcept>

#include "sg/fft3.hpp"

namespace sg {

const PauliMatrices& pauli() {
  static const PauliMatrices m = [] {
    PauliMatrices p;
    p.sigma_x << 0, 1, 1, 0;
    p.sigma_y << 0, -iu, iu, 0;
    p.sigma_z << 1, 0, 0, -1;
    return p;
  }();
  return m;
}

GaussianPacketSpec with_kick(GaussianPacketSpec spec, const PhysParams& p) {
  spec.phase_params = KickPhases{p.B0, p.eta, p.dt_field};
  return spec;
}

SpinorField2 make_gaussian(const GaussianPacketSpec& spec, const Grid3& g) {
  if (!(spec.d > 0.0)) throw std::invalid_argument("packet width must be > 0");
  if (std::abs(spec.spin.squaredNorm() - 1.0) > 1e-12) {
    throw std::invalid_argument("spin amplitudes must satisfy |a|^2+|b|^2=1");
  }
  for (int a = 0; a < 3; ++a) {
    if (g.halfwidth[a] - std::abs(spec.center[a]) < 5.0 * spec.d) {
      throw std::invalid_argument(
          "box too small: needs >= 5 widths of room around the packet center");
    }
  }
  SpinorField2 chi;
  chi.grid = g;
  chi.values.resize(g.size(), 2);
  const Real norm = std::pow(pi * spec.d * spec.d, -0.75);
  const Real inv2d2 = 1.0 / (2.0 * spec.d * spec.d);
  std::int64_t row = 0;
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix, ++row) {
        const Vec3 r = g.node(ix, iy, iz) - spec.center;
        const Real envelope = norm * std::exp(-r.squaredNorm() * inv2d2);
        chi.values(row, 0) = envelope * spec.spin[0];
        chi.values(row, 1) = envelope * spec.spin[1];
      }
    }
  }
  return chi;
}

SpinorField2 sg_phase_kick(const SpinorField2& chi, const PhysParams& p,
                           bool include_sigma_x) {
  const DerivedScales ds = derive_scales(p);
  const Real alpha = ds.mu * p.B0 * p.dt_field / p.hbar;
  const Real beta = ds.mu * p.eta * p.dt_field / p.hbar;

  SpinorField2 out;
  out.grid = chi.grid;
  out.values.resize(chi.values.rows(), 2);
  const Grid3& g = chi.grid;
  std::int64_t row = 0;
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix, ++row) {
        const Vec3 x = g.node(ix, iy, iz);
        if (!include_sigma_x) {
          const Complex ph = std::exp(iu * (beta * x[2] - alpha));
          out.values(row, 0) = ph * chi.values(row, 0);
          out.values(row, 1) = std::conj(ph) * chi.values(row, 1);
        } else {
          // exp(-i theta b_hat.sigma) = cos(theta) I - i sin(theta) b_hat.sigma
          const Vec3 b = p.eta * x[0] * Vec3::UnitX() +
                         (p.B0 - p.eta * x[2]) * Vec3::UnitZ();
          const Real bmag = b.norm();
          const Real theta = ds.mu * bmag * p.dt_field / p.hbar;
          Mat2c U = std::cos(theta) * Mat2c::Identity();
          if (bmag > 0.0) {
            const Vec3 n = b / bmag;
            const PauliMatrices& s = pauli();
            U -= iu * std::sin(theta) *
                 (n[0] * s.sigma_x + n[1] * s.sigma_y + n[2] * s.sigma_z);
          }
          const Vec2c v(chi.values(row, 0), chi.values(row, 1));
          const Vec2c w = U * v;
          out.values(row, 0) = w[0];
          out.values(row, 1) = w[1];
        }
      }
    }
  }
  return out;
}

SpinorField2 free_evolve_analytic(const GaussianPacketSpec& spec,
                                  const PhysParams& p, Real t, const Grid3& g) {
  const Real alpha =
      spec.phase_params
          ? derive_scales(p).mu * spec.phase_params->B0 * spec.phase_params->dt / p.hbar
          : 0.0;
  const Real beta =
      spec.phase_params
          ? derive_scales(p).mu * spec.phase_params->eta * spec.phase_params->dt / p.hbar
          : 0.0;

  const Real d2 = spec.d * spec.d;
  const Real tau = p.hbar * t / (p.mass * d2);
  const Complex w = Complex{1.0, tau};                 // complex width factor
  const Real norm = std::pow(pi * d2, -0.75);
  const Complex pref = norm * std::pow(w, Complex{-1.5, 0.0});
  const Real kin_phase = -p.hbar * beta * beta * t / (2.0 * p.mass);

  SpinorField2 chi;
  chi.grid = g;
  chi.values.resize(g.size(), 2);
  std::int64_t row = 0;
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix, ++row) {
        const Vec3 r = g.node(ix, iy, iz) - spec.center;
        for (int s = 0; s < 2; ++s) {
          if (spec.spin[s] == Complex{0.0, 0.0}) {
            chi.values(row, s) = 0.0;
            continue;
          }
          const Real sign = (s == 0) ? 1.0 : -1.0;
          const Real kz = sign * beta;                 // kick wave number
          Vec3 rs = r;
          rs[2] -= p.hbar * kz * t / p.mass;           // drift of this branch
          const Complex arg = -rs.squaredNorm() / (2.0 * d2 * w) +
                              iu * (kz * r[2] + kin_phase +
                                    sign * (beta * spec.center[2] - alpha));
          chi.values(row, s) = spec.spin[s] * pref * std::exp(arg);
        }
      }
    }
  }
  return chi;
}

SpinorField2 free_evolve_spectral(const SpinorField2& chi, const PhysParams& p,
                                  Real t, int steps) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  const Grid3& g = chi.grid;
  const std::int64_t n = g.size();
  const Real dt = t / steps;

  // Kinetic phase per chunk, tabulated once per axis.
  std::array<Eigen::VectorXd, 3> k2;
  for (int a = 0; a < 3; ++a) {
    k2[a].resize(g.dims[a]);
    for (std::int64_t j = 0; j < g.dims[a]; ++j) {
      const Real k = fft_freq(j, g.dims[a], g.spacing(a));
      k2[a][j] = k * k;
    }
  }
  Eigen::VectorXcd phase(n);
  {
    std::int64_t row = 0;
    for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
      for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
        for (std::int64_t ix = 0; ix < g.dims[0]; ++ix, ++row) {
          const Real ksq = k2[0][ix] + k2[1][iy] + k2[2][iz];
          phase[row] = std::exp(-iu * p.hbar * ksq * dt / (2.0 * p.mass));
        }
      }
    }
  }

  SpinorField2 out = chi;
  Eigen::VectorXcd work(n);
  for (int comp = 0; comp < 2; ++comp) {
    work = out.values.col(comp);
    for (int s = 0; s < steps; ++s) {
      fft3(work, g.dims, false);
      work.array() *= phase.array();
      fft3(work, g.dims, true);
    }
    out.values.col(comp) = work;
  }

  const Real edge = boundary_norm_fraction(out);
  if (edge > 1e-6) {
    throw std::runtime_error(
        "spectral evolution: probability reached the box boundary (fraction " +
        std::to_string(edge) + ")");
  }
  return out;
}

Real boundary_norm_fraction(const SpinorField2& chi) {
  const Grid3& g = chi.grid;
  Real edge = 0.0, total = 0.0;
  std::int64_t row = 0;
  for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
    for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
      for (std::int64_t ix = 0; ix < g.dims[0]; ++ix, ++row) {
        const Real v = chi.values.row(row).squaredNorm();
        total += v;
        const bool boundary = ix == 0 || ix == g.dims[0] - 1 || iy == 0 ||
                              iy == g.dims[1] - 1 || iz == 0 ||
                              iz == g.dims[2] - 1;
        if (boundary) edge += v;
      }
    }
  }
  return total > 0.0 ? edge / total : 0.0;
}

Real norm2(const SpinorField2& chi) {
  return chi.values.squaredNorm() * chi.grid.cell_volume();
}

Vec3 momentum_expectation(const SpinorField2& chi, const PhysParams& p,
                          Real* imag_residual) {
  const Grid3& g = chi.grid;
  const std::int64_t n = g.size();

  std::array<Eigen::VectorXd, 3> kaxis;
  for (int a = 0; a < 3; ++a) {
    kaxis[a].resize(g.dims[a]);
    for (std::int64_t j = 0; j < g.dims[a]; ++j) {
      kaxis[a][j] = fft_freq(j, g.dims[a], g.spacing(a));
    }
  }

  Complex acc[3] = {Complex{0, 0}, Complex{0, 0}, Complex{0, 0}};
  Eigen::VectorXcd hat(n), deriv(n);
  for (int comp = 0; comp < 2; ++comp) {
    hat = chi.values.col(comp);
    fft3(hat, g.dims, false);
    for (int a = 0; a < 3; ++a) {
      deriv = hat;
      std::int64_t row = 0;
      for (std::int64_t iz = 0; iz < g.dims[2]; ++iz) {
        for (std::int64_t iy = 0; iy < g.dims[1]; ++iy) {
          for (std::int64_t ix = 0; ix < g.dims[0]; ++ix, ++row) {
            const Real k = (a == 0) ? kaxis[0][ix]
                                    : (a == 1) ? kaxis[1][iy] : kaxis[2][iz];
            deriv[row] *= iu * k;
          }
        }
      }
      fft3(deriv, g.dims, true);
      // integral of conj(chi) * (-i hbar d_a chi)
      acc[a] += -iu * p.hbar *
                (chi.values.col(comp).conjugate().array() * deriv.array()).sum();
    }
  }

  const Real vol = g.cell_volume();
  const Real nrm = norm2(chi);
  Vec3 result;
  Real worst_imag = 0.0;
  for (int a = 0; a < 3; ++a) {
    const Complex v = acc[a] * vol / nrm;
    result[a] = v.real();
    worst_imag = std::max(worst_imag, std::abs(v.imag()));
  }
  if (imag_residual) *imag_residual = worst_imag;
  return result;
}

Vec3 spin_expectation(const SpinorField2& chi) {
  Real sx = 0.0, sy = 0.0, sz = 0.0;
  for (std::int64_t r = 0; r < chi.values.rows(); ++r) {
    const Complex u = chi.values(r, 0), l = chi.values(r, 1);
    const Complex ul = std::conj(u) * l;
    sx += 2.0 * ul.real();
    sy += 2.0 * ul.imag();
    sz += std::norm(u) - std::norm(l);
  }
  const Real vol = chi.grid.cell_volume();
  const Real nrm = norm2(chi);
  return Vec3(sx, sy, sz) * vol / nrm;
}

ScalarGridField density(const SpinorField2& chi) {
  ScalarGridField f;
  f.grid = chi.grid;
  f.values = chi.values.rowwise().squaredNorm();
  return f;
}

ScalarGridField component_density(const SpinorField2& chi, int comp) {
  if (comp < 0 || comp > 1) throw std::invalid_argument("component must be 0 or 1");
  ScalarGridField f;
  f.grid = chi.grid;
  f.values = chi.values.col(comp).array().abs2();
  return f;
}

Real l2_diff(const SpinorField2& a, const SpinorField2& b) {
  if (a.values.rows() != b.values.rows()) {
    throw std::invalid_argument("l2_diff: mismatched grids");
  }
  return std::sqrt((a.values - b.values).squaredNorm() * a.grid.cell_volume());
}

}  // namespace sg
