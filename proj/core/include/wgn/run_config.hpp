#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wgn/bathymetry.hpp"
#include "wgn/params.hpp"
#include "wgn/spectral.hpp"
#include "wgn/state.hpp"
#include "wgn/timestepper.hpp"

namespace wgn {

// Fully validated simulation setup parsed from a JSON config file. Schema:
//
// {
//   "grid":       { "n_points": 256, "length": 6.2832 },
//   "params":     { "mu": 0.01, "epsilon": 0.1, "beta": 0.1, "h0": 0.5 },
//   "initial":    { "kind": "gaussian", "amplitude": 1.0,
//                   "center": 3.14, "width": 0.35 }
//               | { "kind": "mode", "amplitude": 0.1, "mode": 2 }
//               | { "kind": "file", "path": "restart.wgn" },
//   "bathymetry": { "kind": "flat" }
//               | { "kind": "gaussian_bump", "amplitude": 1.0,
//                   "center": 3.14, "width": 0.5 }
//               | { "kind": "bar", "amplitude": 1.0, "center": 3.14,
//                   "width": 1.5, "ramp": 0.25 },
//   "stepping":   { "t_end": 5.0, "output_every": 0.5, "cfl": 0.5,
//                   "dt": 0.001 (optional, overrides cfl) },
//   "solver":     { "tol": 1e-10, "max_iter": 500 },
//   "outputs":    { "directory": "out", "snapshots": true,
//                   "checkpoints": false },
//   "diagnostics": { "sobolev_s": 2.0 }   (optional)
// }
//
// "gaussian" initial data sets v = zeta (a right-moving pulse to leading
// order); "mode" sets zeta = amplitude * cos(2 pi mode x / length), v = 0;
// "file" restarts from a checkpoint whose grid and parameters must match
// this config exactly.
struct InitialSpec {
  std::string kind = "gaussian";
  double amplitude = 0.1;
  double center = 0.0;   // 0 means "length/2" after parsing
  double width = 0.35;
  int mode = 1;
  std::string path;
};

struct BathymetrySpec {
  std::string kind = "flat";
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;
  double ramp = 0.0;     // 0 means "width/8" after parsing
};

struct OutputSpec {
  std::string directory = ".";
  bool snapshots = true;
  bool checkpoints = false;
};

struct RunConfig {
  Grid grid;
  PhysParams params;
  InitialSpec initial;
  BathymetrySpec bathymetry;
  StepConfig stepping;
  SolverOptions solver;
  OutputSpec outputs;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses and validates; throws ConfigError listing every violation found.
// No output paths are touched during validation.
RunConfig load_run_config(const std::string& path);
RunConfig run_config_from_json(const std::string& text);

Bathymetry build_bathymetry(Spectral& engine, const RunConfig& cfg);

// Builds the initial state (reading the restart checkpoint for kind "file",
// which must match the config grid and parameters exactly).
State build_initial_state(Spectral& engine, const RunConfig& cfg);

} // namespace wgn
