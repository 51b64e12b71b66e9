// Command line front end: simulate | dispersion | verify | convergence.
// Exit codes: 0 success, 1 failed verification/internal error, 2 bad
// arguments or config, 3 cavitation abort, 4 solver abort, 5 instability.

#include <CLI11.hpp>

#include "wgn/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral solver for a full-dispersion shallow water"
               " system over variable bathymetry"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* sim = app.add_subcommand("simulate", "Run a simulation from a JSON config");
  sim->add_option("--config", config_path, "Path to the JSON run configuration")->required();

  double mu = 1.0, xi_max = 10.0;
  int n_xi = 200;
  std::string param_sets = "-1,1,1;0.207,1,0.071";
  std::string disp_out = "dispersion.csv";
  CLI::App* disp = app.add_subcommand("dispersion", "Tabulate dispersion relations to CSV");
  disp->add_option("--mu", mu, "Shallowness parameter");
  disp->add_option("--xi-max", xi_max, "Largest frequency tabulated");
  disp->add_option("--n-xi", n_xi, "Number of frequency samples");
  disp->add_option("--params", param_sets,
                   "Green-Naghdi parameter sets \"theta,alpha,gamma[;...]\"");
  disp->add_option("--out", disp_out, "Output CSV path");

  std::string verify_spec, verify_out;
  CLI::App* verify = app.add_subcommand(
      "verify", "Randomized symbol-estimate and operator-contract campaigns");
  verify->add_option("--spec", verify_spec, "Sweep spec JSON (defaults used when omitted)");
  verify->add_option("--out", verify_out, "Write the JSON report here as well as stdout");

  std::string conv_spec, conv_out;
  CLI::App* conv = app.add_subcommand("convergence", "Convergence-order campaigns");
  conv->add_option("--spec", conv_spec, "Sweep spec JSON (defaults used when omitted)");
  conv->add_option("--out", conv_out, "Write the JSON report here as well as stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return wgn::exit_config;
  }

  if (sim->parsed()) return wgn::cmd_simulate(config_path);
  if (disp->parsed()) return wgn::cmd_dispersion(mu, xi_max, n_xi, param_sets, disp_out);
  if (verify->parsed()) return wgn::cmd_verify(verify_spec, verify_out);
  return wgn::cmd_convergence(conv_spec, conv_out);
}
