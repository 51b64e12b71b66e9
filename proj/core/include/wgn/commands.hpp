#pragma once

#include <string>

namespace wgn {

// Process exit codes shared by the CLI and the command entry points.
enum ExitCode {
  exit_ok = 0,
  exit_failure = 1,      // verification reports with failed properties
  exit_config = 2,       // unreadable/invalid config or arguments
  exit_cavitation = 3,
  exit_solver = 4,
  exit_instability = 5,
};

// Runs a simulation described by a JSON config. Emits diagnostics CSV and
// (per config) snapshots/checkpoints into the output directory; on an abort
// the final state is still written for post-mortem inspection.
int cmd_simulate(const std::string& config_path);

// Tabulates omega_ww and omega_gn on xi_i = i * xi_max / n_xi, i = 1..n_xi.
// parameter_sets is "theta,alpha,gamma[;theta,alpha,gamma...]".
int cmd_dispersion(double mu, double xi_max, int n_xi,
                   const std::string& parameter_sets, const std::string& out_path);

// Symbol-estimate and operator-contract campaigns. spec_path may be empty
// (defaults are used); out_path may be empty (report goes to stdout only).
// Returns exit_failure when any property fails.
int cmd_verify(const std::string& spec_path, const std::string& out_path);

// Convergence-order campaigns, same conventions as cmd_verify.
int cmd_convergence(const std::string& spec_path, const std::string& out_path);

} // namespace wgn
