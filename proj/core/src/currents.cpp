#include "pauli/currents.hpp"

#include <cmath>
#include <string>

#include "pauli/errors.hpp"
#include "pauli/spectral.hpp"

namespace pauli {

namespace {

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw ValidationError(std::string(what) + ": fields live on different grids");
}

// Re(psi^dag sigma_a chi) for a = x, y, z at one point.
Vec3 sigma_bilinear_real(Complex u, Complex d, Complex cu, Complex cd) {
  const Complex I(0.0, 1.0);
  const Complex sx = std::conj(u) * cd + std::conj(d) * cu;
  const Complex sy = std::conj(u) * (-I * cd) + std::conj(d) * (I * cu);
  const Complex sz = std::conj(u) * cu - std::conj(d) * cd;
  return {sx.real(), sy.real(), sz.real()};
}

double max_spinor_norm(const std::array<ComplexArray, 2>& comp) {
  double m = 0.0;
  for (std::size_t k = 0; k < comp[0].size(); ++k) m = std::max(m, std::norm(comp[0][k]) + std::norm(comp[1][k]));
  return std::sqrt(m);
}

}  // namespace

CurrentDecomposition decompose_current(const SpinorField& f, const EMPotential& p, double t,
                                       const Particle& particle) {
  const Grid& grid = f.grid;
  const std::size_t n = grid.size();
  const double m = particle.mass;

  CurrentDecomposition out;
  out.j_conv = VectorField::zeros(grid);
  for (int c = 0; c < 2; ++c) {
    const auto grad = spectral::gradient(grid, f.comp[c]);
    for (int a = 0; a < grid.dim(); ++a)
      for (std::size_t k = 0; k < n; ++k)
        out.j_conv.components[a][k] += (kHbar / m) * (std::conj(f.comp[c][k]) * grad[a][k]).imag();
  }

  out.j_gauge = VectorField::zeros(grid);
  const SampledPotential sp = sample(grid, p, t);
  if (sp.has_vector_potential) {
    const ScalarField rho = density(f);
    for (int a = 0; a < 3; ++a)
      for (std::size_t k = 0; k < n; ++k)
        out.j_gauge.components[a][k] = -(particle.charge / m) * sp.a[a][k] * rho.values[k];
  }

  out.j_spin = spin_current(f, particle);
  out.j_total = out.j_conv + out.j_gauge + out.j_spin;
  return out;
}

VectorField spin_current(const SpinorField& f, const Particle& particle) {
  VectorField j = spectral::curl(spin_density(f));
  j *= kHbar / (2.0 * particle.mass);
  return j;
}

VectorField mita_current(const SpinorField& f, const Particle& particle) {
  VectorField j = spin_current(f, particle);
  j *= 0.5;
  return j;
}

void require_localized(const SpinorField& f, const char* what) {
  const Grid& grid = f.grid;
  const ScalarField rho = density(f);
  const double peak = rho.max();
  if (!(peak > 0.0)) return;
  double boundary = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto idx = grid.index(k);
    bool on_face = false;
    for (int a = 0; a < grid.dim(); ++a) on_face |= idx[a] == 0 || idx[a] + 1 == grid.n(a);
    if (on_face) boundary = std::max(boundary, rho.values[k]);
  }
  if (boundary > 1e-10 * peak)
    throw NumericalError(std::string(what) + ": state is not localized (boundary density " +
                         std::to_string(boundary / peak) + " of peak)");
}

Vec3 spin_from_mita(const SpinorField& f, const Particle& particle) {
  if (f.grid.dim() != 3) throw ValidationError("spin_from_mita: needs a 3-D grid");
  require_localized(f, "spin_from_mita");
  const Vec3 l = integrate_moment(mita_current(f, particle));
  return {particle.mass * l[0], particle.mass * l[1], particle.mass * l[2]};
}

Vec3 moment_from_current(const VectorField& j, const Particle& particle) {
  const Vec3 l = integrate_moment(j);
  const double h = 0.5 * particle.charge;
  return {h * l[0], h * l[1], h * l[2]};
}

Vec3 moment_from_spin_current(const SpinorField& f, const Particle& particle) {
  if (f.grid.dim() != 3) throw ValidationError("moment_from_spin_current: needs a 3-D grid");
  require_localized(f, "moment_from_spin_current");
  return moment_from_current(spin_current(f, particle), particle);
}

SpinorField auxiliary_spinor(const SpinorField& f, const EMPotential& p, double t, const Particle& particle) {
  SpinorField chi = Hamiltonian(f.grid, p, t, particle).sigma_dot_pi(f);
  chi *= Complex(-1.0 / (2.0 * particle.mass * kLightSpeed));
  return chi;
}

VectorField levy_leblond_current(const SpinorField& psi, const SpinorField& chi, double c) {
  require_same_grid(psi.grid, chi.grid, "levy_leblond_current");
  VectorField j = VectorField::zeros(psi.grid);
  for (std::size_t k = 0; k < psi.grid.size(); ++k) {
    const Vec3 re = sigma_bilinear_real(psi.comp[0][k], psi.comp[1][k], chi.comp[0][k], chi.comp[1][k]);
    // psi^dag sigma chi + chi^dag sigma psi = 2 Re(psi^dag sigma chi)
    for (int a = 0; a < 3; ++a) j.components[a][k] = -2.0 * c * re[a];
  }
  return j;
}

LevyLeblondResidual levy_leblond_residual(const BispinorField& bi, const EMPotential& p, double t,
                                          const Particle& particle, const SpinorField& dpsi_dt, double c) {
  require_same_grid(bi.psi.grid, bi.chi.grid, "levy_leblond_residual");
  require_same_grid(bi.psi.grid, dpsi_dt.grid, "levy_leblond_residual");
  const Hamiltonian h(bi.psi.grid, p, t, particle);
  const double q = particle.charge;
  const double m = particle.mass;
  const std::size_t n = bi.psi.grid.size();

  SpinorField r1 = h.sigma_dot_pi(bi.psi);
  r1.axpy(Complex(2.0 * m * c), bi.chi);

  SpinorField r2 = h.sigma_dot_pi(bi.chi);
  r2 *= Complex(c);
  r2.axpy(Complex(0.0, kHbar), dpsi_dt);
  const RealArray& phi = h.potential().phi;
  for (int comp = 0; comp < 2; ++comp)
    for (std::size_t k = 0; k < n; ++k) r2.comp[comp][k] -= q * phi[k] * bi.psi.comp[comp][k];

  const double scale = max_spinor_norm(bi.psi.comp);
  LevyLeblondResidual out;
  if (scale > 0.0) {
    out.constraint = max_spinor_norm(r1.comp) / scale;
    out.dynamics = max_spinor_norm(r2.comp) / scale;
  }
  return out;
}

ScalarField continuity_residual(const SpinorField& f, const EMPotential& p, double t, const Particle& particle,
                                bool include_spin) {
  const SpinorField hf = apply_hamiltonian(f, p, t, particle);
  const CurrentDecomposition dec = decompose_current(f, p, t, particle);
  const ScalarField div = spectral::divergence(include_spin ? dec.j_total : dec.without_spin());
  ScalarField out = ScalarField::zeros(f.grid);
  for (std::size_t k = 0; k < f.grid.size(); ++k) {
    const Complex e = std::conj(f.comp[0][k]) * hf.comp[0][k] + std::conj(f.comp[1][k]) * hf.comp[1][k];
    out.values[k] = (2.0 / kHbar) * e.imag() + div.values[k];
  }
  return out;
}

double dual_route_difference(const SpinorField& f, const EMPotential& p, double t, const Particle& particle) {
  const VectorField direct = decompose_current(f, p, t, particle).j_total;
  const VectorField ll = levy_leblond_current(f, auxiliary_spinor(f, p, t, particle));
  return (direct - ll).max_norm();
}

}  // namespace pauli
