#pragma once

#include <cstdio>
#include <string>

#include "wgn/bathymetry.hpp"
#include "wgn/diagnostics.hpp"
#include "wgn/grid.hpp"
#include "wgn/params.hpp"
#include "wgn/state.hpp"

namespace wgn {

// CSV emission. Numbers are printed with "%.17g" so files round-trip
// doubles exactly and reruns are byte-identical.

// Header "t,mass,e0,es,min_h,y_norm,cg_iterations".
void write_diagnostics_header(std::FILE* out);
void write_diagnostics_row(std::FILE* out, const DiagnosticsRecord& rec);

// Header "x,zeta,v,h,b"; h is recomputed from the state and bathymetry.
void write_snapshot_csv(const std::string& path, const Grid& grid,
                        const State& state, const Bathymetry& bath,
                        const PhysParams& params);

std::string snapshot_filename(double t);  // "snapshot_t%.6f.csv"

// Binary checkpoint, little-endian, fixed layout:
//   magic "WGN1" | u32 version | u64 n_points | f64 length
//   | f64 mu, epsilon, beta, h0, t | f64 zeta[n] | f64 v[n] | f64 b[n]
// Writes go to a temp file in the target directory followed by an atomic
// rename, so a crash never leaves a torn checkpoint behind.
struct Checkpoint {
  Grid grid;
  PhysParams params;
  State state;
  RealField bottom;
};

void write_checkpoint(const std::string& path, const Grid& grid,
                      const PhysParams& params, const State& state,
                      const RealField& bottom);

// Throws std::runtime_error on bad magic, version, or size mismatch.
Checkpoint read_checkpoint(const std::string& path);

} // namespace wgn
