#pragma once

// Run configuration: a line-oriented `key = value` file with [section]
// headers. '#' starts a comment. Lists are whitespace separated.
//
//   [units]        q
//   [grid]         dim, n, extent                 (one entry per used axis)
//   [initial]      kind = gaussian | plane_wave,
//                  center, width, momentum        (gaussian; momentum = k)
//                  momentum                       (plane_wave)
//                  spinor = re1 im1 re2 im2
//   [potential]    preset, then the preset's parameters
//   [propagator]   scheme, dt, t_end, krylov_dim, tol
//   [output]       series, observables, dump_dir, snapshot_stride, series_stride
//   [trajectories] count, rng_seed, dt, eps, current = total | without_spin,
//                  out_dir, seeds (optional, dim numbers per seed),
//                  arrival_axis, arrival_position (optional, together)
//
// Unknown sections and keys are errors. serialize(parse(text)) parses back
// to an equal config.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pauli/bohm.hpp"
#include "pauli/evolve.hpp"
#include "pauli/fields.hpp"

namespace pauli {

struct GridConfig {
  int dim = 1;
  std::array<std::size_t, 3> n{1, 1, 1};
  Vec3 extent{1.0, 1.0, 1.0};
  bool operator==(const GridConfig&) const = default;
};

enum class InitialKind { Gaussian, PlaneWave };

struct InitialConfig {
  InitialKind kind = InitialKind::Gaussian;
  Vec3 center{0.0, 0.0, 0.0};
  Vec3 width{1.0, 1.0, 1.0};
  Vec3 momentum{0.0, 0.0, 0.0};
  std::array<Complex, 2> spinor{Complex(1.0), Complex(0.0)};
  bool operator==(const InitialConfig&) const = default;
};

struct PotentialConfig {
  Preset preset = Preset::Zero;
  std::map<std::string, double> params;
  bool operator==(const PotentialConfig&) const = default;
};

struct PropagatorSection {
  PropagatorConfig propagator;
  double t_end = 0.0;
  bool operator==(const PropagatorSection&) const = default;
};

struct OutputConfig {
  std::string series = "series.csv";
  std::string observables = "observables.csv";
  std::string dump_dir = "dumps";
  std::size_t snapshot_stride = 10;
  std::size_t series_stride = 1;
  bool operator==(const OutputConfig&) const = default;
};

struct TrajectoryConfig {
  std::size_t count = 100;
  std::uint64_t rng_seed = 1;
  double dt = 0.01;
  double eps = 1e-6;
  CurrentSelection current = CurrentSelection::Total;
  std::string out_dir = "trajectories";
  std::vector<Vec3> seeds;
  std::optional<int> arrival_axis;
  double arrival_position = 0.0;
  bool operator==(const TrajectoryConfig&) const = default;
};

struct SimConfig {
  double charge = -1.0;
  GridConfig grid;
  InitialConfig initial;
  PotentialConfig potential;
  PropagatorSection propagator;
  OutputConfig output;
  std::optional<TrajectoryConfig> trajectories;
  bool operator==(const SimConfig&) const = default;

  Particle particle() const { return {charge, 1.0}; }
  Grid make_grid() const;
  EMPotential make_potential() const;
  SpinorField make_initial_state() const;
};

/// Throws ValidationError naming `origin`, the line, section and key.
SimConfig parse_config(const std::string& text, const std::string& origin = "<config>");
/// Throws IoError when unreadable, ValidationError when invalid.
SimConfig load_config(const std::filesystem::path& path);

std::string serialize(const SimConfig& cfg);

/// Cross-field checks (SplitStep with a vector potential, preset parameters,
/// grid limits, initial state fit). Called by parse_config.
void validate(const SimConfig& cfg);

}  // namespace pauli
