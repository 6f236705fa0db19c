#pragma once

#include <optional>

#include <Eigen/Dense>

#include "sg/grid.hpp"
#include "sg/types.hpp"
#include "sg/units.hpp"

namespace sg {

// Two-component spinor field on a grid; column 0 is the z-spin-up amplitude,
// column 1 the z-spin-down amplitude, node-major (x-fastest) rows.
struct SpinorField2 {
  Grid3 grid;
  Eigen::Matrix<Complex, Eigen::Dynamic, 2> values;
};

struct PauliMatrices {
  Mat2c sigma_x, sigma_y, sigma_z;
};

const PauliMatrices& pauli();

// Parameters of the interaction-only phase kick once applied: field strength
// B0, gradient eta, duration dt. Phases depend on them via mu*B0*dt/hbar and
// mu*eta*dt/hbar.
struct KickPhases {
  Real B0 = 0.0;
  Real eta = 0.0;
  Real dt = 0.0;
};

struct GaussianPacketSpec {
  Real d = 1.0;                   // width
  Vec2c spin{1.0, 0.0};           // (a, b), |a|^2 + |b|^2 = 1
  Vec3 center = Vec3::Zero();
  std::optional<KickPhases> phase_params;  // set once kicked
};

// Returns the packet description marked as kicked with the parameters in p.
GaussianPacketSpec with_kick(GaussianPacketSpec spec, const PhysParams& p);

// (pi d^2)^(-3/4) exp(-|x-center|^2 / 2d^2) (a, b). The box must leave at
// least 5d of room around the center on every axis so the truncated norm
// deficit stays below 1e-6.
SpinorField2 make_gaussian(const GaussianPacketSpec& spec, const Grid3& g);

// Interaction-only evolution over p.dt_field in the SG field. Default:
// pointwise phases exp(-/+ i(mu B0 dt - mu eta z dt)/hbar) on the up/down
// components (the transverse field term dropped). With include_sigma_x the
// full 2x2 interaction matrix is exponentiated in closed form per node.
SpinorField2 sg_phase_kick(const SpinorField2& chi, const PhysParams& p,
                           bool include_sigma_x = false);

// Closed-form free evolution of a (possibly kicked) Gaussian: each spin
// component is a drifting Gaussian with complex width 1 + i hbar t / m d^2
// and kick momentum +/- mu eta dt. Unkicked specs evolve with zero drift.
SpinorField2 free_evolve_analytic(const GaussianPacketSpec& spec,
                                  const PhysParams& p, Real t, const Grid3& g);

// Spectral propagation of the free Hamiltonian -(hbar^2/2m) Laplacian,
// applied in `steps` equal exact chunks (periodic boundaries). Throws if
// probability accumulates on the outermost node layer (> 1e-6).
SpinorField2 free_evolve_spectral(const SpinorField2& chi, const PhysParams& p,
                                  Real t, int steps = 1);

// Fraction of the squared norm on the outermost node layer.
Real boundary_norm_fraction(const SpinorField2& chi);

Real norm2(const SpinorField2& chi);

// <p> = integral chi^dag (-i hbar grad) chi / norm^2, gradients taken
// spectrally. The quadrature's imaginary residual (should vanish) is written
// to *imag_residual when given.
Vec3 momentum_expectation(const SpinorField2& chi, const PhysParams& p,
                          Real* imag_residual = nullptr);

// <sigma_i> = integral chi^dag sigma_i chi / norm^2.
Vec3 spin_expectation(const SpinorField2& chi);

// chi^dag chi pointwise.
ScalarGridField density(const SpinorField2& chi);

// |component|^2 pointwise, comp 0 = up, 1 = down.
ScalarGridField component_density(const SpinorField2& chi, int comp);

// sqrt of integral of the summed squared component differences.
Real l2_diff(const SpinorField2& a, const SpinorField2& b);

}  // namespace sg
