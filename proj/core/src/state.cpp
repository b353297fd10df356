#include "pauli/state.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pauli/errors.hpp"
#include "pauli/parallel.hpp"
#include "pauli/spectral.hpp"

namespace pauli {

SpinorField SpinorField::zeros(const Grid& grid) {
  SpinorField f;
  f.grid = grid;
  for (auto& c : f.comp) c.assign(grid.size(), Complex(0.0, 0.0));
  return f;
}

SpinorField& SpinorField::operator+=(const SpinorField& o) {
  for (int c = 0; c < 2; ++c)
    for (std::size_t k = 0; k < comp[c].size(); ++k) comp[c][k] += o.comp[c][k];
  return *this;
}

SpinorField& SpinorField::operator-=(const SpinorField& o) {
  for (int c = 0; c < 2; ++c)
    for (std::size_t k = 0; k < comp[c].size(); ++k) comp[c][k] -= o.comp[c][k];
  return *this;
}

SpinorField& SpinorField::operator*=(Complex s) {
  for (auto& c : comp)
    for (auto& v : c) v *= s;
  return *this;
}

void SpinorField::axpy(Complex s, const SpinorField& x) {
  for (int c = 0; c < 2; ++c) {
    auto& dst = comp[c];
    const auto& src = x.comp[c];
    parallel_for(dst.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) dst[k] += s * src[k];
    });
  }
}

double SpinorField::max_abs() const {
  double m = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) m = std::max(m, std::norm(comp[0][k]) + std::norm(comp[1][k]));
  return std::sqrt(m);
}

bool SpinorField::all_finite() const {
  for (const auto& c : comp)
    for (const auto& v : c)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

SpinorField init_gaussian(const Grid& grid, const GaussianPacket& packet) {
  for (int axis = 0; axis < grid.dim(); ++axis) {
    const double sigma = packet.width[axis];
    if (!(sigma >= 3.0 * grid.h(axis)))
      throw ValidationError("init_gaussian: width " + std::to_string(sigma) + " on axis " + std::to_string(axis) +
                            " is below 3h = " + std::to_string(3.0 * grid.h(axis)));
    const double lo = grid.origin()[axis];
    const double hi = lo + grid.extent(axis);
    const double c = packet.center[axis];
    if (c - lo < 4.0 * sigma || hi - c < 4.0 * sigma)
      throw ValidationError("init_gaussian: centre on axis " + std::to_string(axis) +
                            " is closer than 4 sigma to the boundary");
  }
  const double spin_len = std::sqrt(std::norm(packet.spinor[0]) + std::norm(packet.spinor[1]));
  if (!(spin_len > 0.0) || !std::isfinite(spin_len)) throw ValidationError("init_gaussian: spinor is not normalizable");
  const Complex chi0 = packet.spinor[0] / spin_len;
  const Complex chi1 = packet.spinor[1] / spin_len;

  SpinorField f = SpinorField::zeros(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3 r = grid.position(k);
    double expo = 0.0;
    double phase = 0.0;
    for (int axis = 0; axis < grid.dim(); ++axis) {
      const double d = r[axis] - packet.center[axis];
      expo -= d * d / (4.0 * packet.width[axis] * packet.width[axis]);
      phase += packet.momentum[axis] * r[axis];
    }
    const Complex amp = std::exp(expo) * Complex(std::cos(phase), std::sin(phase));
    f.comp[0][k] = amp * chi0;
    f.comp[1][k] = amp * chi1;
  }
  f *= Complex(1.0 / norm(f));
  return f;
}

SpinorField init_plane_wave(const Grid& grid, const Vec3& k, const std::array<Complex, 2>& spinor) {
  for (int axis = 0; axis < grid.dim(); ++axis) {
    const double modes = k[axis] * grid.extent(axis) / (2.0 * std::numbers::pi);
    if (std::abs(modes - std::round(modes)) > 1e-9)
      throw ValidationError("init_plane_wave: k on axis " + std::to_string(axis) + " is not a multiple of 2 pi / L");
  }
  const double spin_len = std::sqrt(std::norm(spinor[0]) + std::norm(spinor[1]));
  if (!(spin_len > 0.0) || !std::isfinite(spin_len))
    throw ValidationError("init_plane_wave: spinor is not normalizable");

  SpinorField f = SpinorField::zeros(grid);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const Vec3 r = grid.position(n);
    double phase = 0.0;
    for (int axis = 0; axis < grid.dim(); ++axis) phase += k[axis] * r[axis];
    const Complex e(std::cos(phase), std::sin(phase));
    f.comp[0][n] = e * spinor[0] / spin_len;
    f.comp[1][n] = e * spinor[1] / spin_len;
  }
  f *= Complex(1.0 / norm(f));
  return f;
}

Complex inner_product(const SpinorField& a, const SpinorField& b) {
  Complex sum(0.0, 0.0);
  for (int c = 0; c < 2; ++c)
    for (std::size_t k = 0; k < a.grid.size(); ++k) sum += std::conj(a.comp[c][k]) * b.comp[c][k];
  return sum * a.grid.cell_volume();
}

double norm(const SpinorField& f) {
  double sum = 0.0;
  for (std::size_t k = 0; k < f.grid.size(); ++k) sum += std::norm(f.comp[0][k]) + std::norm(f.comp[1][k]);
  return std::sqrt(sum * f.grid.cell_volume());
}

ScalarField density(const SpinorField& f) {
  ScalarField rho = ScalarField::zeros(f.grid);
  for (std::size_t k = 0; k < f.grid.size(); ++k) rho.values[k] = std::norm(f.comp[0][k]) + std::norm(f.comp[1][k]);
  return rho;
}

VectorField spin_density(const SpinorField& f) {
  VectorField s = VectorField::zeros(f.grid);
  for (std::size_t k = 0; k < f.grid.size(); ++k) {
    const Complex u = f.comp[0][k];
    const Complex d = f.comp[1][k];
    const Complex cross_term = std::conj(u) * d;  // psi1^* psi2
    s.components[0][k] = 2.0 * cross_term.real();
    s.components[1][k] = 2.0 * cross_term.imag();
    s.components[2][k] = std::norm(u) - std::norm(d);
  }
  return s;
}

Vec3 expect_spin(const SpinorField& f) {
  const Vec3 s = integrate(spin_density(f));
  return {0.5 * kHbar * s[0], 0.5 * kHbar * s[1], 0.5 * kHbar * s[2]};
}

Vec3 expect_moment(const SpinorField& f, const Particle& particle) {
  const double g = particle.charge * kHbar / (2.0 * particle.mass);
  const Vec3 s = integrate(spin_density(f));
  return {g * s[0], g * s[1], g * s[2]};
}

Vec3 expect_position(const SpinorField& f) {
  Vec3 sum{0.0, 0.0, 0.0};
  double total = 0.0;
  for (std::size_t k = 0; k < f.grid.size(); ++k) {
    const double rho = std::norm(f.comp[0][k]) + std::norm(f.comp[1][k]);
    const Vec3 r = f.grid.position(k);
    for (int a = 0; a < 3; ++a) sum[a] += rho * r[a];
    total += rho;
  }
  return {sum[0] / total, sum[1] / total, sum[2] / total};
}

Vec3 expect_momentum(const SpinorField& f) {
  Vec3 out{0.0, 0.0, 0.0};
  for (int c = 0; c < 2; ++c) {
    const auto grad = spectral::gradient(f.grid, f.comp[c]);
    for (int a = 0; a < 3; ++a) {
      Complex sum(0.0, 0.0);
      for (std::size_t k = 0; k < f.grid.size(); ++k) sum += std::conj(f.comp[c][k]) * grad[a][k];
      // <psi| -i hbar d |psi>
      out[a] += (Complex(0.0, -kHbar) * sum).real() * f.grid.cell_volume();
    }
  }
  return out;
}

Vec3 position_spread(const SpinorField& f) {
  const Vec3 mean = expect_position(f);
  Vec3 sum{0.0, 0.0, 0.0};
  double total = 0.0;
  for (std::size_t k = 0; k < f.grid.size(); ++k) {
    const double rho = std::norm(f.comp[0][k]) + std::norm(f.comp[1][k]);
    const Vec3 r = f.grid.position(k);
    for (int a = 0; a < 3; ++a) sum[a] += rho * (r[a] - mean[a]) * (r[a] - mean[a]);
    total += rho;
  }
  return {std::sqrt(sum[0] / total), std::sqrt(sum[1] / total), std::sqrt(sum[2] / total)};
}

Hamiltonian::Hamiltonian(const Grid& grid, const EMPotential& potential, double t, const Particle& particle)
    : grid_(grid), sampled_(sample(grid, potential, t)), particle_(particle) {}

std::array<SpinorField, 3> Hamiltonian::kinetic_momentum(const SpinorField& f) const {
  const double q = particle_.charge;
  std::array<SpinorField, 3> out;
  for (auto& o : out) o = SpinorField::zeros(grid_);
  for (int c = 0; c < 2; ++c) {
    ComplexArray spectrum = f.comp[c];
    spectral::forward(grid_, spectrum);
    for (int axis = 0; axis < 3; ++axis) {
      ComplexArray& dst = out[axis].comp[c];
      if (axis < grid_.dim()) {
        dst = spectral::multiply_ik(grid_, spectrum, axis);
        spectral::inverse(grid_, dst);
        for (auto& v : dst) v *= Complex(0.0, -kHbar);
      }
      if (sampled_.has_vector_potential) {
        const RealArray& a = sampled_.a[axis];
        for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= q * a[k] * f.comp[c][k];
      }
    }
  }
  return out;
}

SpinorField Hamiltonian::sigma_dot_pi(const SpinorField& f) const {
  const auto pi = kinetic_momentum(f);
  SpinorField out = SpinorField::zeros(grid_);
  const Complex I(0.0, 1.0);
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    // sigma_x (u, d) = (d, u); sigma_y (u, d) = (-i d, i u); sigma_z (u, d) = (u, -d)
    out.comp[0][k] = pi[0].comp[1][k] - I * pi[1].comp[1][k] + pi[2].comp[0][k];
    out.comp[1][k] = pi[0].comp[0][k] + I * pi[1].comp[0][k] - pi[2].comp[1][k];
  }
  return out;
}

SpinorField Hamiltonian::apply(const SpinorField& f) const {
  const double q = particle_.charge;
  const double m = particle_.mass;
  const std::size_t n = grid_.size();
  SpinorField out = SpinorField::zeros(grid_);

  for (int c = 0; c < 2; ++c) {
    ComplexArray spectrum = f.comp[c];
    spectral::forward(grid_, spectrum);
    ComplexArray& dst = out.comp[c];

    if (!sampled_.has_vector_potential) {
      const RealArray& k2 = spectral::laplacian_symbol(grid_);
      const double coeff = kHbar * kHbar / (2.0 * m);
      dst = spectrum;
      for (std::size_t k = 0; k < n; ++k) dst[k] *= coeff * k2[k];
      spectral::inverse(grid_, dst);
    } else {
      // sum_j pi_j (pi_j psi)
      ComplexArray div_spectrum(n, Complex(0.0, 0.0));
      ComplexArray potential_part(n, Complex(0.0, 0.0));
      for (int axis = 0; axis < 3; ++axis) {
        ComplexArray u(n, Complex(0.0, 0.0));
        if (axis < grid_.dim()) {
          u = spectral::multiply_ik(grid_, spectrum, axis);
          spectral::inverse(grid_, u);
          for (auto& v : u) v *= Complex(0.0, -kHbar);
        }
        const RealArray& a = sampled_.a[axis];
        for (std::size_t k = 0; k < n; ++k) u[k] -= q * a[k] * f.comp[c][k];
        for (std::size_t k = 0; k < n; ++k) potential_part[k] -= q * a[k] * u[k];
        if (axis < grid_.dim()) {
          spectral::forward(grid_, u);
          const ComplexArray du = spectral::multiply_ik(grid_, u, axis);
          for (std::size_t k = 0; k < n; ++k) div_spectrum[k] += du[k];
        }
      }
      spectral::inverse(grid_, div_spectrum);
      const double inv2m = 1.0 / (2.0 * m);
      for (std::size_t k = 0; k < n; ++k)
        dst[k] = inv2m * (Complex(0.0, -kHbar) * div_spectrum[k] + potential_part[k]);
    }
  }

  if (sampled_.has_scalar_potential) {
    for (int c = 0; c < 2; ++c)
      for (std::size_t k = 0; k < n; ++k) out.comp[c][k] += q * sampled_.phi[k] * f.comp[c][k];
  }

  if (sampled_.has_magnetic_field) {
    const double zeeman = -q * kHbar / (2.0 * m);
    for (std::size_t k = 0; k < n; ++k) {
      const double bx = sampled_.b[0][k], by = sampled_.b[1][k], bz = sampled_.b[2][k];
      const Complex u = f.comp[0][k];
      const Complex d = f.comp[1][k];
      out.comp[0][k] += zeeman * (bz * u + Complex(bx, -by) * d);
      out.comp[1][k] += zeeman * (Complex(bx, by) * u - bz * d);
    }
  }
  return out;
}

SpinorField apply_hamiltonian(const SpinorField& f, const EMPotential& p, double t, const Particle& particle) {
  return Hamiltonian(f.grid, p, t, particle).apply(f);
}

EnergyExpectation expect_energy(const SpinorField& f, const EMPotential& p, double t, const Particle& particle) {
  const Complex e = inner_product(f, apply_hamiltonian(f, p, t, particle));
  return {e.real(), e.imag()};
}

}  // namespace pauli
