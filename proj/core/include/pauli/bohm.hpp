#pragma once

// Bohmian velocity fields v = J / rho and their integral curves.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pauli/currents.hpp"

namespace pauli {

/// Which current drives the velocity.
enum class CurrentSelection { Total, WithoutSpin };

struct VelocityField {
  VectorField v;
  std::vector<std::uint8_t> low_density;  // 1 where rho < eps * rho_peak
  double rho_peak = 0.0;
};

/// v = J / max(rho, eps * rho_peak). Throws ValidationError unless eps > 0.
VelocityField velocity_field(const CurrentDecomposition& dec, const ScalarField& rho, double eps,
                             CurrentSelection selection = CurrentSelection::Total);

/// Velocity snapshots ordered in time, interpolated multilinearly in space
/// and linearly in time. A single snapshot is treated as a static field.
class VelocityHistory {
 public:
  struct Snapshot {
    double t = 0.0;
    VelocityField field;
  };

  /// Throws ValidationError if the list is empty, the grids differ or the
  /// times are not strictly increasing.
  explicit VelocityHistory(std::vector<Snapshot> snapshots);

  /// Builds velocity snapshots from spinor snapshots.
  static VelocityHistory from_states(const std::vector<std::pair<double, SpinorField>>& states,
                                     const EMPotential& p, const Particle& particle, double eps,
                                     CurrentSelection selection = CurrentSelection::Total);

  enum class Lookup { Ok, OutsideDomain, LowDensity };

  /// Velocity at (r, t). Times outside the covered range clamp to the end
  /// snapshots.
  Lookup velocity(const Vec3& r, double t, Vec3& v) const;

  const Grid& grid() const { return snapshots_.front().field.v.grid; }
  double t_begin() const { return snapshots_.front().t; }
  double t_end() const { return snapshots_.back().t; }
  const std::vector<Snapshot>& snapshots() const { return snapshots_; }

 private:
  Lookup spatial(const VelocityField& f, const Vec3& r, Vec3& v) const;

  std::vector<Snapshot> snapshots_;
};

/// Axis-aligned plane x_axis = position.
struct Surface {
  int axis = 0;
  double position = 0.0;
  int id = 0;
};

enum class TrajectoryStatus { Completed, LeftDomain, LowDensity, Arrived };

std::string to_string(TrajectoryStatus s);

struct TrajectorySample {
  double t = 0.0;
  Vec3 r{0.0, 0.0, 0.0};
  Vec3 v{0.0, 0.0, 0.0};
};

struct Trajectory {
  Vec3 seed{0.0, 0.0, 0.0};
  std::vector<TrajectorySample> samples;
  TrajectoryStatus status = TrajectoryStatus::Completed;
  int surface_id = -1;  // set when status == Arrived
};

/// Classical RK4 from t0 to t1 (t1 < t0 integrates backwards) in
/// ceil(|t1 - t0| / dt_traj) equal steps. Stops at the first step that
/// leaves the domain, touches a low-density cell or crosses `stop_at`.
/// Throws ValidationError if the seed is outside the grid or dt_traj <= 0.
Trajectory integrate_trajectory(const VelocityHistory& history, const Vec3& seed, double t0, double t1,
                                double dt_traj, const std::optional<Surface>& stop_at = std::nullopt);

struct Arrival {
  Vec3 seed{0.0, 0.0, 0.0};
  std::optional<double> time;
};

/// First crossing of the plane by sign change of r_axis - position, linearly
/// interpolated between samples.
std::vector<Arrival> arrival_times(const std::vector<Trajectory>& trajectories, const Surface& surface);

/// Draws positions distributed like rho: a grid node with probability
/// proportional to rho, then a uniform offset within its cell.
std::vector<Vec3> sample_seeds(const ScalarField& rho, std::size_t count, std::mt19937_64& rng);

/// Counts positions in blocks of `block` x `block` (x ...) cells centred on
/// the nodes. Positions outside the grid are dropped.
std::vector<double> histogram_positions(const Grid& grid, const std::vector<Vec3>& positions, std::size_t block);

/// rho summed over the same blocks, scaled so the total equals `total`.
std::vector<double> expected_counts(const ScalarField& rho, std::size_t block, double total);

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Pearson chi-square over bins with expected >= min_expected. Bins below
/// the threshold are pooled into one, which is kept only if it reaches the
/// threshold itself.
ChiSquare chi_square_test(const std::vector<double>& observed, const std::vector<double>& expected,
                          double min_expected = 5.0);

}  // namespace pauli
