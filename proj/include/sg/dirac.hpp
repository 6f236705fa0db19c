#pragma once

#include <utility>

#include <Eigen/Dense>

#include "sg/fields.hpp"
#include "sg/grid.hpp"
#include "sg/pauli.hpp"
#include "sg/types.hpp"
#include "sg/units.hpp"

namespace sg {

// Dirac representation: alpha_i = [[0, sigma_i], [sigma_i, 0]],
// beta = diag(I, -I).
struct DiracMatrices {
  Mat4c alpha_x, alpha_y, alpha_z, beta;
};

const DiracMatrices& dirac_matrices();

// Four-component spinor field; columns 0,1 = upper pair (chi_u), 2,3 = lower
// pair (chi_l), node-major rows. The stored values omit a global phase
// exp(-i * factored_phase): the fast rest-energy rotation is bookkept here
// rather than discretized. No observable depends on it. Norms are tracked,
// never silently rescaled (the non-relativistic lift is not normalized).
struct SpinorField4 {
  Grid3 grid;
  Eigen::Matrix<Complex, Eigen::Dynamic, 4> values;
  Real factored_phase = 0.0;
};

// chi_l = (-i hbar c sigma.grad + e sigma.A - e phi) / (2 m c^2) chi_u,
// gradients spectral, potentials pointwise. Requires the non-relativistic
// regime (hbar / (m c d) small); throws when the gate fails.
SpinorField4 lift_to_dirac(const SpinorField2& chi_u, const AnalyticEMField& f,
                           const PhysParams& p);

enum class PreparedState { z_up_pre, z_up_post, x_up_pre, x_up_post };

// Closed-form states: Gaussian packets lifted to 4-spinors, before the field
// (pre) and immediately after the interaction impulse (post). Post states
// carry the kick phases exp(-/+ i(mu B0 dt - mu eta z dt)/hbar) in the stored
// values and the rest-energy angle m c^2 dt / hbar in factored_phase.
SpinorField4 prepared_state(PreparedState which, const PhysParams& p,
                            const Grid3& g);

// rho = -e psi^dag psi (nonpositive).
ScalarGridField charge_density(const SpinorField4& psi, const PhysParams& p);

// J = -e c psi^dag alpha psi.
VecGridField current_density(const SpinorField4& psi, const PhysParams& p);

// f = rho E + (1/c) J x B pointwise.
VecGridField dirac_force_density(const SpinorField4& psi,
                                 const AnalyticEMField& f, const PhysParams& p);

// The post-impulse x-spin-up current in closed form: branch-interference
// terms modulated by cos/sin of 2 mu (B0 - eta z) dt / hbar. Must agree with
// current_density(prepared_state(x_up_post)) node-wise.
VecGridField post_field_current_xup(const PhysParams& p, const Grid3& g);

// Free evolution in the non-relativistic reduction: chi_u propagates under
// the free kinetic Hamiltonian (spectral, in `steps` chunks), chi_l is
// re-lifted with zero potentials. factored_phase advances by m c^2 t / hbar.
SpinorField4 evolve_nr(const SpinorField4& psi, const PhysParams& p, Real t,
                       int steps = 1);

// Same reduction along the closed-form route: analytic evolution of a kicked
// Gaussian spec, then the zero-potential lift.
SpinorField4 evolve_nr_analytic(const GaussianPacketSpec& spec,
                                const PhysParams& p, Real t, const Grid3& g);

// z-basis weights |cos(theta/2)|^2, |sin(theta/2)|^2 of the spin direction
// (theta, phi_s); the azimuth does not affect the weights.
std::pair<Real, Real> lump_fractions(Real theta, Real phi_s = 0.0);

Real norm2(const SpinorField4& psi);

// Upper pair as a two-component field (for observables defined on chi_u).
SpinorField2 upper_pair(const SpinorField4& psi);

// max node-wise component difference divided by the max magnitude of b.
Real max_rel_diff(const SpinorField4& a, const SpinorField4& b);
Real max_rel_diff(const VecGridField& a, const VecGridField& b);

}  // namespace sg
