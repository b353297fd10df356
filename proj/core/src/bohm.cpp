#include "pauli/bohm.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>

#include "pauli/errors.hpp"

namespace pauli {

VelocityField velocity_field(const CurrentDecomposition& dec, const ScalarField& rho, double eps,
                             CurrentSelection selection) {
  if (!(eps > 0.0)) throw ValidationError("velocity_field: eps must be positive");
  const VectorField j = selection == CurrentSelection::Total ? dec.j_total : dec.without_spin();
  if (!(j.grid == rho.grid)) throw ValidationError("velocity_field: current and density grids differ");

  VelocityField out;
  out.rho_peak = rho.max();
  const double floor = eps * out.rho_peak;
  const std::size_t n = rho.grid.size();
  out.v = VectorField::zeros(rho.grid);
  out.low_density.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = rho.values[k];
    if (r < floor) out.low_density[k] = 1;
    const double denom = std::max(r, floor);
    if (denom <= 0.0) continue;
    for (int a = 0; a < 3; ++a) out.v.components[a][k] = j.components[a][k] / denom;
  }
  return out;
}

VelocityHistory::VelocityHistory(std::vector<Snapshot> snapshots) : snapshots_(std::move(snapshots)) {
  if (snapshots_.empty()) throw ValidationError("velocity history needs at least one snapshot");
  for (std::size_t i = 1; i < snapshots_.size(); ++i) {
    if (!(snapshots_[i].field.v.grid == snapshots_[0].field.v.grid))
      throw ValidationError("velocity snapshots live on different grids");
    if (!(snapshots_[i].t > snapshots_[i - 1].t))
      throw ValidationError("velocity snapshot times must increase strictly");
  }
}

VelocityHistory VelocityHistory::from_states(const std::vector<std::pair<double, SpinorField>>& states,
                                             const EMPotential& p, const Particle& particle, double eps,
                                             CurrentSelection selection) {
  std::vector<Snapshot> snaps;
  snaps.reserve(states.size());
  for (const auto& [t, f] : states)
    snaps.push_back({t, velocity_field(decompose_current(f, p, t, particle), density(f), eps, selection)});
  return VelocityHistory(std::move(snaps));
}

VelocityHistory::Lookup VelocityHistory::spatial(const VelocityField& f, const Vec3& r, Vec3& v) const {
  const Grid& g = f.v.grid;
  if (!g.contains(r)) return Lookup::OutsideDomain;

  std::array<std::size_t, 3> lo{0, 0, 0}, hi{0, 0, 0};
  std::array<double, 3> w{0.0, 0.0, 0.0};
  for (int a = 0; a < g.dim(); ++a) {
    const double s = (r[a] - g.origin()[a]) / g.h(a);
    const double fl = std::floor(s);
    const auto i = static_cast<std::size_t>(std::max(0.0, fl));
    lo[a] = std::min(i, g.n(a) - 1);
    hi[a] = (lo[a] + 1) % g.n(a);  // the last cell wraps onto the periodic image
    w[a] = s - fl;
  }

  v = {0.0, 0.0, 0.0};
  const int corners = 1 << g.dim();
  for (int c = 0; c < corners; ++c) {
    std::array<std::size_t, 3> idx{0, 0, 0};
    double weight = 1.0;
    for (int a = 0; a < g.dim(); ++a) {
      const bool upper = (c >> a) & 1;
      idx[a] = upper ? hi[a] : lo[a];
      weight *= upper ? w[a] : 1.0 - w[a];
    }
    const std::size_t flat = g.flat(idx[0], idx[1], idx[2]);
    if (f.low_density[flat]) return Lookup::LowDensity;
    for (int a = 0; a < 3; ++a) v[a] += weight * f.v.components[a][flat];
  }
  return Lookup::Ok;
}

VelocityHistory::Lookup VelocityHistory::velocity(const Vec3& r, double t, Vec3& v) const {
  if (snapshots_.size() == 1 || t <= t_begin()) return spatial(snapshots_.front().field, r, v);
  if (t >= t_end()) return spatial(snapshots_.back().field, r, v);

  const auto it = std::upper_bound(snapshots_.begin(), snapshots_.end(), t,
                                   [](double x, const Snapshot& s) { return x < s.t; });
  const Snapshot& b = *it;
  const Snapshot& a = *(it - 1);
  Vec3 va, vb;
  const Lookup la = spatial(a.field, r, va);
  if (la != Lookup::Ok) return la;
  const Lookup lb = spatial(b.field, r, vb);
  if (lb != Lookup::Ok) return lb;
  const double s = (t - a.t) / (b.t - a.t);
  for (int k = 0; k < 3; ++k) v[k] = (1.0 - s) * va[k] + s * vb[k];
  return Lookup::Ok;
}

std::string to_string(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::Completed: return "Completed";
    case TrajectoryStatus::LeftDomain: return "LeftDomain";
    case TrajectoryStatus::LowDensity: return "LowDensity";
    case TrajectoryStatus::Arrived: return "Arrived";
  }
  return "?";
}

namespace {

TrajectoryStatus status_for(VelocityHistory::Lookup l) {
  return l == VelocityHistory::Lookup::OutsideDomain ? TrajectoryStatus::LeftDomain : TrajectoryStatus::LowDensity;
}

Vec3 offset(const Vec3& r, const Vec3& k, double h) { return {r[0] + h * k[0], r[1] + h * k[1], r[2] + h * k[2]}; }

}  // namespace

Trajectory integrate_trajectory(const VelocityHistory& history, const Vec3& seed, double t0, double t1,
                                double dt_traj, const std::optional<Surface>& stop_at) {
  if (!(dt_traj > 0.0)) throw ValidationError("trajectory step must be positive");
  if (!history.grid().contains(seed)) throw ValidationError("trajectory seed lies outside the grid");

  Trajectory traj;
  traj.seed = seed;
  Vec3 v0;
  const auto first = history.velocity(seed, t0, v0);
  if (first != VelocityHistory::Lookup::Ok) {
    traj.status = status_for(first);
    traj.samples.push_back({t0, seed, {0.0, 0.0, 0.0}});
    return traj;
  }
  traj.samples.push_back({t0, seed, v0});

  const double span = t1 - t0;
  const auto steps = static_cast<std::size_t>(std::ceil(std::abs(span) / dt_traj - 1e-12));
  if (steps == 0) return traj;
  const double h = span / static_cast<double>(steps);

  Vec3 r = seed;
  Vec3 k1 = v0;
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = t0 + static_cast<double>(s) * h;
    Vec3 k2, k3, k4;
    auto l = history.velocity(offset(r, k1, 0.5 * h), t + 0.5 * h, k2);
    if (l == VelocityHistory::Lookup::Ok) l = history.velocity(offset(r, k2, 0.5 * h), t + 0.5 * h, k3);
    if (l == VelocityHistory::Lookup::Ok) l = history.velocity(offset(r, k3, h), t + h, k4);
    if (l != VelocityHistory::Lookup::Ok) {
      traj.status = status_for(l);
      return traj;
    }
    Vec3 next;
    for (int a = 0; a < 3; ++a) next[a] = r[a] + h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);

    const double t_next = t0 + static_cast<double>(s + 1) * h;
    Vec3 v_next;
    const auto ln = history.velocity(next, t_next, v_next);
    if (ln != VelocityHistory::Lookup::Ok) {
      traj.status = status_for(ln);
      return traj;
    }
    traj.samples.push_back({t_next, next, v_next});
    if (stop_at) {
      const double before = r[stop_at->axis] - stop_at->position;
      const double after = next[stop_at->axis] - stop_at->position;
      if ((before < 0.0) != (after < 0.0)) {
        traj.status = TrajectoryStatus::Arrived;
        traj.surface_id = stop_at->id;
        return traj;
      }
    }
    r = next;
    k1 = v_next;
  }
  return traj;
}

std::vector<Arrival> arrival_times(const std::vector<Trajectory>& trajectories, const Surface& surface) {
  std::vector<Arrival> out;
  out.reserve(trajectories.size());
  for (const auto& traj : trajectories) {
    Arrival a;
    a.seed = traj.seed;
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
      const auto& p = traj.samples[i - 1];
      const auto& q = traj.samples[i];
      const double dp = p.r[surface.axis] - surface.position;
      const double dq = q.r[surface.axis] - surface.position;
      if ((dp < 0.0) != (dq < 0.0)) {
        a.time = p.t + (q.t - p.t) * dp / (dp - dq);
        break;
      }
    }
    out.push_back(a);
  }
  return out;
}

std::vector<Vec3> sample_seeds(const ScalarField& rho, std::size_t count, std::mt19937_64& rng) {
  const Grid& g = rho.grid;
  std::discrete_distribution<std::size_t> pick(rho.values.begin(), rho.values.end());
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  std::vector<Vec3> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Vec3 r = g.position(pick(rng));
    for (int a = 0; a < g.dim(); ++a) r[a] += jitter(rng) * g.h(a);
    out.push_back(r);
  }
  return out;
}

namespace {

std::size_t block_count(const Grid& g, std::size_t block, int axis) {
  return axis < g.dim() ? (g.n(axis) + block - 1) / block : 1;
}

std::size_t block_index(const Grid& g, std::size_t block, const std::array<std::size_t, 3>& idx) {
  std::size_t flat = 0;
  for (int a = 0; a < 3; ++a) flat = flat * block_count(g, block, a) + (a < g.dim() ? idx[a] / block : 0);
  return flat;
}

std::size_t total_blocks(const Grid& g, std::size_t block) {
  return block_count(g, block, 0) * block_count(g, block, 1) * block_count(g, block, 2);
}

}  // namespace

std::vector<double> histogram_positions(const Grid& grid, const std::vector<Vec3>& positions, std::size_t block) {
  if (block == 0) throw ValidationError("histogram block must be positive");
  std::vector<double> counts(total_blocks(grid, block), 0.0);
  for (const auto& r : positions) {
    std::array<std::size_t, 3> idx{0, 0, 0};
    bool inside = true;
    for (int a = 0; a < grid.dim(); ++a) {
      // node i owns [x_i - h/2, x_i + h/2)
      const double s = std::floor((r[a] - grid.origin()[a]) / grid.h(a) + 0.5);
      if (s < 0.0 || s >= static_cast<double>(grid.n(a))) {
        inside = false;
        break;
      }
      idx[a] = static_cast<std::size_t>(s);
    }
    if (inside) counts[block_index(grid, block, idx)] += 1.0;
  }
  return counts;
}

std::vector<double> expected_counts(const ScalarField& rho, std::size_t block, double total) {
  if (block == 0) throw ValidationError("histogram block must be positive");
  const Grid& g = rho.grid;
  std::vector<double> out(total_blocks(g, block), 0.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    out[block_index(g, block, g.index(k))] += rho.values[k];
    sum += rho.values[k];
  }
  if (sum > 0.0)
    for (auto& e : out) e *= total / sum;
  return out;
}

ChiSquare chi_square_test(const std::vector<double>& observed, const std::vector<double>& expected,
                          double min_expected) {
  if (observed.size() != expected.size()) throw ValidationError("chi-square: bin counts differ");
  ChiSquare out;
  int bins = 0;
  double pooled_obs = 0.0, pooled_exp = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] >= min_expected) {
      const double d = observed[i] - expected[i];
      out.statistic += d * d / expected[i];
      ++bins;
    } else {
      pooled_obs += observed[i];
      pooled_exp += expected[i];
    }
  }
  // a sparse tail pooled below the threshold would dominate the statistic
  if (pooled_exp >= min_expected) {
    const double d = pooled_obs - pooled_exp;
    out.statistic += d * d / pooled_exp;
    ++bins;
  }
  out.dof = std::max(bins - 1, 1);
  out.p_value = boost::math::gamma_q(0.5 * out.dof, 0.5 * out.statistic);
  return out;
}

}  // namespace pauli
