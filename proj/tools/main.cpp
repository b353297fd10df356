// paulilab: command-line front end for the Pauli-equation toolkit.
//
//   paulilab verify [--rep original|convenient] [--tamper B5]
//   paulilab simulate <config>
//   paulilab analyze <dump-dir> [--omit-spin]
//   paulilab trajectories <dump-dir> <config>
//
// PAULI_THREADS sets the worker count for data-parallel loops.

#include <CLI11.hpp>

#include <iostream>

#include "pauli/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pauli-equation simulation and verification toolkit"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "exact Dirac-algebra and linearization checks");
  std::string rep;
  std::string tamper;
  verify->add_option("--rep", rep, "restrict to one representation")
      ->transform(CLI::IsMember({"original", "convenient"}, CLI::ignore_case));
  verify->add_option("--tamper", tamper, "fault injection: replace the named matrix (B5)");

  auto* simulate = app.add_subcommand("simulate", "propagate the configured initial state");
  std::string config;
  simulate->add_option("config", config, "run configuration")->required();

  auto* analyze = app.add_subcommand("analyze", "current decomposition metrics for snapshot dumps");
  std::string dump_dir;
  bool omit_spin = false;
  analyze->add_option("dir", dump_dir, "dump directory written by simulate")->required();
  analyze->add_flag("--omit-spin", omit_spin, "drop the spin current from the continuity check");

  auto* trajectories = app.add_subcommand("trajectories", "Bohmian trajectories through snapshot dumps");
  std::string traj_dir, traj_config;
  trajectories->add_option("dir", traj_dir, "dump directory written by simulate")->required();
  trajectories->add_option("config", traj_config, "configuration with a [trajectories] section")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pauli::kExitValidation;
  }

  if (*verify) {
    pauli::VerifyOptions opts;
    if (!rep.empty()) {
      opts.rep = rep == "original" ? pauli::RepKind::Original : pauli::RepKind::Convenient;
    }
    if (!tamper.empty()) opts.tamper = tamper;
    return pauli::run_verify(opts, std::cout, std::cerr);
  }
  if (*simulate) return pauli::run_simulate(config, std::cout, std::cerr);
  if (*analyze) return pauli::run_analyze(dump_dir, omit_spin, std::cout, std::cerr);
  return pauli::run_trajectories(traj_dir, traj_config, std::cout, std::cerr);
}
