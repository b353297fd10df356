#pragma once

// Time propagation of the Pauli equation.
//
// SplitStep: Strang splitting of kinetic and local parts; only valid when
// A vanishes on the grid, because the kinetic factor is diagonal in Fourier
// space only without a vector potential.
// Krylov: Lanczos approximation of exp(-i H dt / hbar) built from the
// matrix-free Hamiltonian; handles every preset.
//
// Potentials are evaluated at the step midpoint t + dt/2.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "pauli/fields.hpp"
#include "pauli/state.hpp"

namespace pauli {

enum class Scheme { SplitStep, Krylov };

Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme s);

struct PropagatorConfig {
  Scheme scheme = Scheme::Krylov;
  double dt = 0.01;
  int krylov_dim = 40;
  double tol = 1e-10;
  bool operator==(const PropagatorConfig&) const = default;
};

/// Throws ValidationError for dt <= 0, krylov_dim < 4 or tol <= 0.
void validate(const PropagatorConfig& cfg);

/// Largest dt for which the explicit-scheme heuristic 0.25 m h^2 / (pi hbar)
/// holds on the finest axis. Informational only.
double suggested_dt(const Grid& grid, const Particle& particle = {});

/// One Strang step. Throws ValidationError if A is nonzero anywhere on the grid.
SpinorField step_splitstep(const SpinorField& f, const EMPotential& p, double t, double dt,
                           const Particle& particle = {});

struct KrylovStep {
  SpinorField state;
  bool converged = false;
  int dimension = 0;          // subspace size actually used
  double error_estimate = 0;  // a-posteriori estimate relative to |psi|
};

/// One Lanczos step. The result is not renormalised. When the error
/// estimate stays above cfg.tol at cfg.krylov_dim the step is returned with
/// converged = false.
KrylovStep step_krylov(const SpinorField& f, const EMPotential& p, double t, double dt,
                       const PropagatorConfig& cfg, const Particle& particle = {});

/// Called with (step index, time, state). Step 0 is the initial state.
using ObserverCallback = std::function<void(std::size_t, double, const SpinorField&)>;

struct Observer {
  std::size_t stride = 1;  // fire every `stride` steps, plus the final step
  ObserverCallback callback;
};

struct SeriesRow {
  double t = 0.0;
  double norm = 0.0;
  Vec3 spin{0.0, 0.0, 0.0};
  Vec3 position{0.0, 0.0, 0.0};
};

struct RunRecord {
  SpinorField final_state;
  double t_final = 0.0;
  std::size_t steps_taken = 0;
  bool aborted = false;
  std::string failure;
  std::vector<SeriesRow> series;  // one row per step, including step 0
};

/// Steps f0 from t0 to t1. (t1 - t0)/dt must be an integer to within 1e-9
/// (ValidationError otherwise). A Krylov step that fails to converge stops
/// the run: the record holds the last good state and aborted = true.
RunRecord propagate(const SpinorField& f0, const EMPotential& p, const PropagatorConfig& cfg, double t0,
                    double t1, const Particle& particle = {}, const std::vector<Observer>& observers = {});

}  // namespace pauli
