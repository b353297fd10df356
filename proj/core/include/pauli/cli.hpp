#pragma once

// Entry points behind the `pauli` executable. Each returns a process exit
// status: 0 success, 1 validation error, 2 numerical failure, 3 I/O error.
//
// CSV files written here have fixed header rows:
//   series       t,norm,Sx,Sy,Sz,energy,cont_residual_max,dual_current_maxdiff
//   observables  t,x,y,z,dx,dy,dz
//   analysis     step,t,norm,j_conv_max,j_gauge_max,j_spin_max,
//                cont_residual_max,dual_current_maxdiff,levy_leblond_residual
//   trajectory   t,x,y,z,vx,vy,vz
//   summary      id,seed_x,seed_y,seed_z,status,samples,t_last
//   arrivals     id,seed_x,seed_y,seed_z,arrival_time   (empty when none)
// Floating values carry 17 significant digits.

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "pauli/algebra.hpp"

namespace pauli {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitNumerical = 2, kExitIo = 3 };

/// Runs `body`, translating pauli exceptions into exit codes and printing
/// their message to `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

struct VerifyOptions {
  std::optional<RepKind> rep;          // restrict to one representation
  std::optional<std::string> tamper;   // "B5": replace B5 by B4 before checking
  std::size_t symbol_draws = 1000;
  std::uint64_t seed = 20240611;
};

/// Exact algebra suite for both representations, the a / sign sweep and
/// the symbol-square check. Exit 0 iff every gated condition passes.
int run_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

/// Propagates the configured state, writing the series and observables
/// CSVs, snapshot dumps and a copy of the config (run.cfg) into the dump
/// directory.
int run_simulate(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

/// Current-decomposition metrics per dump in `dir`, written to
/// dir/analysis.csv (dir/analysis_omit_spin.csv with omit_spin). Needs
/// dir/run.cfg for the potential and charge.
int run_analyze(const std::filesystem::path& dir, bool omit_spin, std::ostream& out, std::ostream& err);

/// Bohmian trajectories through the dumps in `dir`, seeded and configured
/// by the [trajectories] section of `config`.
int run_trajectories(const std::filesystem::path& dir, const std::filesystem::path& config, std::ostream& out,
                     std::ostream& err);

}  // namespace pauli
