#include "wgn/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "wgn/io.hpp"
#include "wgn/run_config.hpp"
#include "wgn/verification.hpp"

namespace wgn {

namespace {

namespace fs = std::filesystem;

struct FileCloser {
  void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

int status_exit_code(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return exit_ok;
    case RunStatus::cavitation_abort: return exit_cavitation;
    case RunStatus::solver_abort: return exit_solver;
    case RunStatus::instability_abort: return exit_instability;
  }
  return exit_failure;
}

const char* status_name(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::cavitation_abort: return "cavitation abort";
    case RunStatus::solver_abort: return "solver abort";
    case RunStatus::instability_abort: return "instability abort";
  }
  return "unknown";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "theta,alpha,gamma[;theta,alpha,gamma...]"
std::vector<GnParams> parse_parameter_sets(const std::string& text) {
  std::vector<GnParams> sets;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    GnParams p;
    double vals[3];
    int count = 0;
    std::stringstream fields(group);
    std::string field;
    while (std::getline(fields, field, ',')) {
      if (count >= 3) { count = 4; break; }
      std::size_t pos = 0;
      vals[count] = std::stod(field, &pos);
      while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos]))) ++pos;
      if (pos != field.size()) throw std::invalid_argument("trailing characters");
      ++count;
    }
    if (count != 3)
      throw std::invalid_argument("parameter set \"" + group + "\" needs exactly theta,alpha,gamma");
    p.theta = vals[0];
    p.alpha = vals[1];
    p.gamma = vals[2];
    sets.push_back(p);
  }
  if (sets.empty()) throw std::invalid_argument("no parameter sets given");
  return sets;
}

int run_campaign(const std::string& spec_path, const std::string& out_path,
                 std::vector<PropertyReport> (*campaign)(const SweepSpec&)) {
  SweepSpec spec;
  if (!spec_path.empty()) {
    try {
      spec = sweep_spec_from_json(read_text_file(spec_path));
    } catch (const std::exception& e) {
      std::fprintf(stderr, "%s\n", e.what());
      return exit_config;
    }
  }

  std::vector<PropertyReport> reports;
  try {
    reports = campaign(spec);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "campaign failed: %s\n", e.what());
    return exit_failure;
  }

  const std::string doc = reports_to_json(reports);
  std::fputs(doc.c_str(), stdout);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::fprintf(stderr, "cannot write %s\n", out_path.c_str());
      return exit_config;
    }
    out << doc;
  }
  return all_passed(reports) ? exit_ok : exit_failure;
}

} // namespace

int cmd_simulate(const std::string& config_path) {
  RunConfig cfg;
  try {
    cfg = load_run_config(config_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return exit_config;
  }

  try {
    fs::create_directories(cfg.outputs.directory);

    Spectral engine(cfg.grid);
    const Bathymetry bath = build_bathymetry(engine, cfg);
    State initial;
    try {
      initial = build_initial_state(engine, cfg);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "%s\n", e.what());
      return exit_config;
    }
    OperatorContext ctx(engine, cfg.params);

    const fs::path dir(cfg.outputs.directory);
    FilePtr diag(std::fopen((dir / "diagnostics.csv").string().c_str(), "w"));
    if (!diag) throw std::runtime_error("cannot open diagnostics.csv for writing");
    write_diagnostics_header(diag.get());

    Sinks sinks;
    sinks.on_sample = [&](const DiagnosticsRecord& rec, const State& s) {
      write_diagnostics_row(diag.get(), rec);
      if (cfg.outputs.snapshots)
        write_snapshot_csv((dir / snapshot_filename(s.t)).string(), cfg.grid, s, bath, cfg.params);
      if (cfg.outputs.checkpoints)
        write_checkpoint((dir / "checkpoint.wgn").string(), cfg.grid, cfg.params, s, bath.b);
    };

    const RunOutcome outcome =
        run_simulation(ctx, std::move(initial), bath, cfg.stepping, cfg.solver, sinks);
    diag.reset();

    if (outcome.status != RunStatus::completed) {
      // Post-mortem snapshot of the state at the abort, regardless of the
      // snapshots setting.
      write_snapshot_csv((dir / snapshot_filename(outcome.final_state.t)).string(),
                         cfg.grid, outcome.final_state, bath, cfg.params);
      std::fprintf(stderr, "simulate: %s at t = %.6f after %ld steps\n",
                   status_name(outcome.status), outcome.final_state.t, outcome.steps_taken);
      return status_exit_code(outcome.status);
    }

    std::fprintf(stdout, "simulate: completed t = %.6f in %ld steps\n",
                 outcome.final_state.t, outcome.steps_taken);
    return exit_ok;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "simulate: %s\n", e.what());
    return exit_failure;
  }
}

int cmd_dispersion(double mu, double xi_max, int n_xi,
                   const std::string& parameter_sets, const std::string& out_path) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    std::fprintf(stderr, "dispersion: mu must be positive\n");
    return exit_config;
  }
  if (!(xi_max > 0.0) || n_xi < 0) {
    std::fprintf(stderr, "dispersion: xi-max must be positive and n-xi >= 0\n");
    return exit_config;
  }

  std::vector<GnParams> sets;
  try {
    sets = parse_parameter_sets(parameter_sets);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "dispersion: bad --params: %s\n", e.what());
    return exit_config;
  }

  std::vector<double> xi;
  xi.reserve(n_xi);
  for (int i = 1; i <= n_xi; ++i) xi.push_back(xi_max * i / n_xi);

  std::vector<DispersionRow> rows;
  try {
    rows = dispersion_table(mu, xi, sets);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "dispersion: %s\n", e.what());
    return exit_config;
  }

  FilePtr f(std::fopen(out_path.c_str(), "w"));
  if (!f) {
    std::fprintf(stderr, "dispersion: cannot write %s\n", out_path.c_str());
    return exit_config;
  }
  std::fputs("xi,omega_ww", f.get());
  for (std::size_t j = 0; j < sets.size(); ++j)
    std::fprintf(f.get(), ",omega_gn_%zu", j + 1);
  std::fputs(",omega_ww_over_xi2", f.get());
  for (std::size_t j = 0; j < sets.size(); ++j)
    std::fprintf(f.get(), ",omega_gn_%zu_over_xi2", j + 1);
  std::fputs("\n", f.get());

  char buf[40];
  auto put = [&](double x, char suffix) {
    std::snprintf(buf, sizeof buf, "%.17g%c", x, suffix);
    std::fputs(buf, f.get());
  };
  for (const DispersionRow& row : rows) {
    put(row.xi, ',');
    put(row.omega_ww, ',');
    for (double w : row.omega_gn) put(w, ',');
    put(row.ww_over_xi2, row.gn_over_xi2.empty() ? '\n' : ',');
    for (std::size_t j = 0; j < row.gn_over_xi2.size(); ++j)
      put(row.gn_over_xi2[j], j + 1 == row.gn_over_xi2.size() ? '\n' : ',');
  }
  return exit_ok;
}

int cmd_verify(const std::string& spec_path, const std::string& out_path) {
  return run_campaign(spec_path, out_path, [](const SweepSpec& spec) {
    std::vector<PropertyReport> reports = check_symbol_estimates(spec);
    std::vector<PropertyReport> contracts = check_operator_contracts(spec);
    reports.insert(reports.end(), contracts.begin(), contracts.end());
    return reports;
  });
}

int cmd_convergence(const std::string& spec_path, const std::string& out_path) {
  return run_campaign(spec_path, out_path, convergence_orders);
}

} // namespace wgn
