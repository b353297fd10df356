#pragma once

#include <array>

#include "pauli/fields.hpp"
#include "pauli/grid.hpp"
#include "pauli/units.hpp"

namespace pauli {

/// Two-component spinor psi = (psi1, psi2) sampled on a grid.
struct SpinorField {
  Grid grid;
  std::array<ComplexArray, 2> comp;

  static SpinorField zeros(const Grid& grid);

  SpinorField& operator+=(const SpinorField& o);
  SpinorField& operator-=(const SpinorField& o);
  SpinorField& operator*=(Complex s);
  friend SpinorField operator+(SpinorField a, const SpinorField& b) { return a += b; }
  friend SpinorField operator-(SpinorField a, const SpinorField& b) { return a -= b; }
  friend SpinorField operator*(Complex s, SpinorField a) { return a *= s; }

  /// this += s * x
  void axpy(Complex s, const SpinorField& x);

  /// max over points of sqrt(psi^dagger psi).
  double max_abs() const;
  bool all_finite() const;
};

/// Psi = (psi, chi): the dynamical spinor and its auxiliary partner.
struct BispinorField {
  SpinorField psi;
  SpinorField chi;
};

/// Gaussian wave packet psi = N exp(-|r-c|^2 / (4 sigma^2)) exp(i k0.r) chi.
struct GaussianPacket {
  Vec3 center{0.0, 0.0, 0.0};
  Vec3 width{1.0, 1.0, 1.0};
  Vec3 momentum{0.0, 0.0, 0.0};
  std::array<Complex, 2> spinor{Complex(1.0), Complex(0.0)};
};

/// Throws ValidationError if sigma < 3h on a used axis, the centre is closer
/// than 4 sigma to a boundary, or the spinor has zero length. The spinor is
/// normalised and the result has unit grid norm.
SpinorField init_gaussian(const Grid& grid, const GaussianPacket& packet);

/// psi = exp(i k.r) chi normalised to unit grid norm. Throws ValidationError
/// unless every used component of k is a multiple of 2 pi / L (so the
/// wave is periodic on the box) or the spinor has zero length.
SpinorField init_plane_wave(const Grid& grid, const Vec3& k, const std::array<Complex, 2>& spinor);

/// sum psi^dagger phi h^dim
Complex inner_product(const SpinorField& a, const SpinorField& b);
double norm(const SpinorField& f);

ScalarField density(const SpinorField& f);
/// s(r) = psi^dagger sigma psi
VectorField spin_density(const SpinorField& f);

/// <S> = (hbar/2) int s
Vec3 expect_spin(const SpinorField& f);
/// <mu_s> = (q hbar / 2m) int s
Vec3 expect_moment(const SpinorField& f, const Particle& particle);

Vec3 expect_position(const SpinorField& f);
/// Canonical momentum <p> = <psi| -i hbar grad |psi>, real part.
Vec3 expect_momentum(const SpinorField& f);
/// Standard deviation of each coordinate under rho / norm^2.
Vec3 position_spread(const SpinorField& f);

/// Pauli Hamiltonian H = (p - qA)^2/2m + q phi - (q hbar/2m) sigma.B with
/// the potentials frozen at one time. Applied matrix-free with spectral
/// derivatives; the kinetic term is sum_j pi_j pi_j with
/// pi_j = -i hbar d_j - q A_j, which is the expansion
/// p^2 - q(p.A + A.p) + q^2 A^2 term by term.
class Hamiltonian {
 public:
  Hamiltonian(const Grid& grid, const EMPotential& potential, double t, const Particle& particle);

  SpinorField apply(const SpinorField& f) const;

  /// pi_j psi for each used axis j (unused axes are zero fields).
  std::array<SpinorField, 3> kinetic_momentum(const SpinorField& f) const;

  /// sigma . (p - qA) psi
  SpinorField sigma_dot_pi(const SpinorField& f) const;

  const SampledPotential& potential() const { return sampled_; }
  const Grid& grid() const { return grid_; }
  const Particle& particle() const { return particle_; }

 private:
  Grid grid_;
  SampledPotential sampled_;
  Particle particle_;
};

SpinorField apply_hamiltonian(const SpinorField& f, const EMPotential& p, double t, const Particle& particle);

struct EnergyExpectation {
  double value = 0.0;
  double imaginary = 0.0;  // diagnostic; zero for Hermitian H up to rounding
};

EnergyExpectation expect_energy(const SpinorField& f, const EMPotential& p, double t, const Particle& particle);

}  // namespace pauli
