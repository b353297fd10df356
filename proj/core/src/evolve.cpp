#include "pauli/evolve.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <optional>

#include "pauli/errors.hpp"
#include "pauli/spectral.hpp"

namespace pauli {

Scheme parse_scheme(const std::string& name) {
  if (name == "SplitStep") return Scheme::SplitStep;
  if (name == "Krylov") return Scheme::Krylov;
  throw ValidationError("unknown propagator scheme '" + name + "' (expected SplitStep or Krylov)");
}

std::string to_string(Scheme s) { return s == Scheme::SplitStep ? "SplitStep" : "Krylov"; }

void validate(const PropagatorConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ValidationError("propagator dt must be positive");
  if (cfg.scheme == Scheme::Krylov) {
    if (cfg.krylov_dim < 4) throw ValidationError("krylov_dim must be at least 4");
    if (!(cfg.tol > 0.0)) throw ValidationError("krylov tol must be positive");
  }
}

double suggested_dt(const Grid& grid, const Particle& particle) {
  double h = grid.h(0);
  for (int a = 1; a < grid.dim(); ++a) h = std::min(h, grid.h(a));
  return 0.25 * particle.mass * h * h / (std::numbers::pi * kHbar);
}

namespace {

void require_no_vector_potential(const SampledPotential& sp) {
  if (sp.has_vector_potential) throw ValidationError("SplitStep requires A ≡ 0");
}

// exp(-i V tau / hbar) with V = q phi - w.sigma, w = (q hbar / 2m) B, applied
// pointwise as e^{-i q phi tau/hbar} (cos theta + i sin theta sigma.n).
void apply_local(const SampledPotential& sp, const Particle& particle, double tau, SpinorField& f) {
  const double q = particle.charge;
  const double zeeman = q * kHbar / (2.0 * particle.mass);
  const std::size_t n = f.grid.size();
  for (std::size_t k = 0; k < n; ++k) {
    Complex u = f.comp[0][k];
    Complex d = f.comp[1][k];
    if (sp.has_magnetic_field) {
      const double wx = zeeman * sp.b[0][k], wy = zeeman * sp.b[1][k], wz = zeeman * sp.b[2][k];
      const double w = std::sqrt(wx * wx + wy * wy + wz * wz);
      if (w > 0.0) {
        const double theta = w * tau / kHbar;
        const double c = std::cos(theta);
        const double s = std::sin(theta) / w;
        // i s (w.sigma) acting on (u, d)
        const Complex is(0.0, s);
        const Complex nu = c * u + is * (wz * u + Complex(wx, -wy) * d);
        const Complex nd = c * d + is * (Complex(wx, wy) * u - wz * d);
        u = nu;
        d = nd;
      }
    }
    if (sp.has_scalar_potential) {
      const double angle = -q * sp.phi[k] * tau / kHbar;
      const Complex phase(std::cos(angle), std::sin(angle));
      u *= phase;
      d *= phase;
    }
    f.comp[0][k] = u;
    f.comp[1][k] = d;
  }
}

SpinorField splitstep_with(const SampledPotential& sp, const SpinorField& f, double dt, const Particle& particle) {
  const Grid& grid = f.grid;
  SpinorField out = f;
  apply_local(sp, particle, 0.5 * dt, out);
  const RealArray& k2 = spectral::laplacian_symbol(grid);
  const double coeff = kHbar * dt / (2.0 * particle.mass);
  for (int c = 0; c < 2; ++c) {
    ComplexArray& a = out.comp[c];
    spectral::forward(grid, a);
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double angle = -coeff * k2[k];
      a[k] *= Complex(std::cos(angle), std::sin(angle));
    }
    spectral::inverse(grid, a);
  }
  apply_local(sp, particle, 0.5 * dt, out);
  return out;
}

KrylovStep krylov_with(const Hamiltonian& h, const SpinorField& f, double dt, const PropagatorConfig& cfg) {
  KrylovStep result;
  const double beta0 = norm(f);
  if (beta0 == 0.0) {
    result.state = f;
    result.converged = true;
    return result;
  }

  const int m = cfg.krylov_dim;
  std::vector<SpinorField> basis;
  basis.reserve(static_cast<std::size_t>(m) + 1);
  SpinorField v = f;
  v *= Complex(1.0 / beta0);
  basis.push_back(v);

  std::vector<double> alpha, beta;
  Eigen::VectorXcd coeffs;

  for (int j = 0; j < m; ++j) {
    SpinorField w = h.apply(basis[j]);
    const double a = inner_product(basis[j], w).real();
    alpha.push_back(a);
    w.axpy(Complex(-a), basis[j]);
    if (j > 0) w.axpy(Complex(-beta[j - 1]), basis[j - 1]);
    // full reorthogonalisation, twice for safety
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w.axpy(-inner_product(b, w), b);
    const double b = norm(w);

    const int dim = j + 1;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < dim) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
    const Eigen::MatrixXd& q = eig.eigenvectors();
    Eigen::VectorXcd phases(dim);
    for (int i = 0; i < dim; ++i) {
      const double angle = -eig.eigenvalues()(i) * dt / kHbar;
      phases(i) = Complex(std::cos(angle), std::sin(angle)) * q(0, i);
    }
    coeffs = q.cast<Complex>() * phases;

    const bool breakdown = b <= 1e-14 * std::abs(a) || b == 0.0;
    const double estimate = b * std::abs(coeffs(dim - 1));
    result.dimension = dim;
    result.error_estimate = breakdown ? 0.0 : estimate;
    if (breakdown || estimate < cfg.tol) {
      result.converged = true;
      break;
    }
    if (dim == m) break;
    beta.push_back(b);
    w *= Complex(1.0 / b);
    basis.push_back(std::move(w));
  }

  SpinorField out = SpinorField::zeros(f.grid);
  for (int i = 0; i < result.dimension; ++i) out.axpy(beta0 * coeffs(i), basis[i]);
  result.state = std::move(out);
  return result;
}

// Potential data reused across steps when the potential is static.
class Stepper {
 public:
  Stepper(const Grid& grid, const EMPotential& p, const PropagatorConfig& cfg, const Particle& particle)
      : grid_(grid), p_(p), cfg_(cfg), particle_(particle) {}

  KrylovStep step(const SpinorField& f, double t) {
    const double tm = t + 0.5 * cfg_.dt;
    if (cfg_.scheme == Scheme::SplitStep) {
      const SampledPotential& sp = sampled(tm);
      KrylovStep r;
      r.state = splitstep_with(sp, f, cfg_.dt, particle_);
      r.converged = true;
      return r;
    }
    return krylov_with(hamiltonian(tm), f, cfg_.dt, cfg_);
  }

 private:
  const SampledPotential& sampled(double t) {
    if (!sampled_ || p_.time_dependent) {
      sampled_ = sample(grid_, p_, t);
      require_no_vector_potential(*sampled_);
    }
    return *sampled_;
  }

  const Hamiltonian& hamiltonian(double t) {
    if (!hamiltonian_ || p_.time_dependent) hamiltonian_.emplace(grid_, p_, t, particle_);
    return *hamiltonian_;
  }

  Grid grid_;
  const EMPotential& p_;
  PropagatorConfig cfg_;
  Particle particle_;
  std::optional<SampledPotential> sampled_;
  std::optional<Hamiltonian> hamiltonian_;
};

SeriesRow series_row(double t, const SpinorField& f) {
  return {t, norm(f), expect_spin(f), expect_position(f)};
}

}  // namespace

SpinorField step_splitstep(const SpinorField& f, const EMPotential& p, double t, double dt,
                           const Particle& particle) {
  const SampledPotential sp = sample(f.grid, p, t + 0.5 * dt);
  require_no_vector_potential(sp);
  return splitstep_with(sp, f, dt, particle);
}

KrylovStep step_krylov(const SpinorField& f, const EMPotential& p, double t, double dt,
                       const PropagatorConfig& cfg, const Particle& particle) {
  PropagatorConfig c = cfg;
  c.scheme = Scheme::Krylov;
  c.dt = dt;
  validate(c);
  const Hamiltonian h(f.grid, p, t + 0.5 * dt, particle);
  return krylov_with(h, f, dt, c);
}

RunRecord propagate(const SpinorField& f0, const EMPotential& p, const PropagatorConfig& cfg, double t0,
                    double t1, const Particle& particle, const std::vector<Observer>& observers) {
  validate(cfg);
  if (!(t1 >= t0)) throw ValidationError("propagate: t_end must not precede t_start");
  const double ratio = (t1 - t0) / cfg.dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded))
    throw ValidationError("propagate: (t_end - t_start)/dt is not an integer");
  const auto steps = static_cast<std::size_t>(rounded);
  for (const auto& o : observers)
    if (o.stride == 0) throw ValidationError("observer stride must be positive");

  RunRecord rec;
  rec.final_state = f0;
  rec.t_final = t0;
  rec.series.reserve(steps + 1);

  auto notify = [&](std::size_t step, double t, const SpinorField& f) {
    for (const auto& o : observers)
      if (step % o.stride == 0 || step == steps) o.callback(step, t, f);
  };

  rec.series.push_back(series_row(t0, f0));
  notify(0, t0, f0);

  Stepper stepper(f0.grid, p, cfg, particle);
  for (std::size_t s = 1; s <= steps; ++s) {
    // t from the step count, so long runs accumulate no drift in t
    const double t_prev = t0 + static_cast<double>(s - 1) * cfg.dt;
    const double t = t0 + static_cast<double>(s) * cfg.dt;
    KrylovStep r = stepper.step(rec.final_state, t_prev);
    if (!r.converged) {
      rec.aborted = true;
      rec.failure = "Krylov step " + std::to_string(s) + " did not converge at dimension " +
                    std::to_string(r.dimension) + " (estimate " + std::to_string(r.error_estimate) + ")";
      return rec;
    }
    if (!r.state.all_finite()) {
      rec.aborted = true;
      rec.failure = "non-finite state at step " + std::to_string(s);
      return rec;
    }
    rec.final_state = std::move(r.state);
    rec.t_final = t;
    rec.steps_taken = s;
    rec.series.push_back(series_row(t, rec.final_state));
    notify(s, t, rec.final_state);
  }
  return rec;
}

}  // namespace pauli
