#pragma once

// Probability-current constructions for the Pauli spinor.
//
// Two independent routes to the same current are provided:
//   * decompose_current: convective + gauge + spin terms, each built
//     directly from psi and its spectral gradient;
//   * levy_leblond_current: -c (psi^dag sigma chi + chi^dag sigma psi) with
//     chi the auxiliary spinor of the first-order (Levy-Leblond) system.
// They agree up to spectral rounding for every potential, which is the
// executable form of the spin-current derivation.

#include "pauli/fields.hpp"
#include "pauli/state.hpp"

namespace pauli {

struct CurrentDecomposition {
  VectorField j_conv;   // -(i hbar/2m)[psi^dag grad psi - (grad psi)^dag psi]
  VectorField j_gauge;  // -(q/m) A psi^dag psi
  VectorField j_spin;   // (hbar/2m) curl(psi^dag sigma psi)
  VectorField j_total;  // sum of the three

  /// j_conv + j_gauge, i.e. the current without the spin term.
  VectorField without_spin() const { return j_conv + j_gauge; }
};

CurrentDecomposition decompose_current(const SpinorField& f, const EMPotential& p, double t,
                                       const Particle& particle = {});

/// (hbar/2m) curl(psi^dag sigma psi). This is also the magnetization current
/// (1/q) curl M with M the magnetic-moment density; the two are the same
/// formula, so there is one function.
VectorField spin_current(const SpinorField& f, const Particle& particle = {});

/// (hbar/4m) curl(psi^dag sigma psi): half the spin current, the current
/// whose orbital angular momentum reproduces <S>.
VectorField mita_current(const SpinorField& f, const Particle& particle = {});

/// Throws NumericalError if the density on any boundary face exceeds
/// 1e-10 of the peak density.
void require_localized(const SpinorField& f, const char* what);

/// m sum r x j_mita h^dim. Equals expect_spin(f) for localized states on a
/// 3-D grid. Throws ValidationError when dim != 3.
Vec3 spin_from_mita(const SpinorField& f, const Particle& particle = {});

/// (q/2) sum r x j h^dim for an arbitrary current.
Vec3 moment_from_current(const VectorField& j, const Particle& particle);

/// (q/2) sum r x j_spin h^dim; equals expect_moment(f) (g = 2) for
/// localized 3-D states.
Vec3 moment_from_spin_current(const SpinorField& f, const Particle& particle = {});

/// chi = -(1/2mc) sigma . (p - qA) psi, with c = 1.
SpinorField auxiliary_spinor(const SpinorField& f, const EMPotential& p, double t, const Particle& particle = {});

/// -c (psi^dag sigma chi + chi^dag sigma psi). Throws ValidationError on
/// grid mismatch.
VectorField levy_leblond_current(const SpinorField& psi, const SpinorField& chi, double c = kLightSpeed);

struct LevyLeblondResidual {
  double constraint = 0.0;  // max |sigma.pi psi + 2mc chi| / max |psi|
  double dynamics = 0.0;    // max |c sigma.pi chi + (i hbar d_t - q phi) psi| / max |psi|
  double value() const { return std::max(constraint, dynamics); }
};

/// Residuals of the minimally coupled first-order system for a bispinor
/// and a supplied time derivative of psi.
LevyLeblondResidual levy_leblond_residual(const BispinorField& bi, const EMPotential& p, double t,
                                          const Particle& particle, const SpinorField& dpsi_dt,
                                          double c = kLightSpeed);

/// d rho/dt + div J pointwise, with d rho/dt = (2/hbar) Im(psi^dag H psi).
/// `include_spin = false` drops j_spin from J.
ScalarField continuity_residual(const SpinorField& f, const EMPotential& p, double t,
                                const Particle& particle = {}, bool include_spin = true);

/// Max-norm difference between decompose_current(...).j_total and the
/// Levy-Leblond current of auxiliary_spinor(...).
double dual_route_difference(const SpinorField& f, const EMPotential& p, double t, const Particle& particle = {});

}  // namespace pauli
