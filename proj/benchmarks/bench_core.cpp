#include <benchmark/benchmark.h>

#include <cmath>

#include "wgn/diagnostics.hpp"
#include "wgn/operators.hpp"
#include "wgn/timestepper.hpp"

namespace {

constexpr double pi = 3.14159265358979323846;

// Deterministic multi-mode fields; no RNG so runs are comparable.
wgn::RealField wave_field(const wgn::Grid& grid, double amplitude) {
  wgn::RealField f(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.dx * i;
    f[i] = amplitude * (std::cos(2.0 * x) + 0.5 * std::sin(5.0 * x) + 0.25 * std::cos(9.0 * x));
  }
  return f;
}

struct Fixture {
  wgn::Grid grid;
  wgn::Spectral eng;
  wgn::OperatorContext ctx;
  wgn::Bathymetry bath;
  wgn::RealField h;
  wgn::RealField v;
  wgn::State state;

  explicit Fixture(int n)
      : grid(wgn::make_grid(n, 2.0 * pi)),
        eng(grid),
        ctx(eng, wgn::PhysParams{0.1, 0.1, 0.1, 0.5}),
        bath(wgn::make_bathymetry(eng, wgn::bar_profile(grid, 1.0, pi, 1.5, 0.25), 0.1)) {
    state = wgn::make_rest_state(n);
    state.zeta = wave_field(grid, 0.5);
    state.v = wave_field(grid, 0.3);
    h = wgn::depth(ctx, state.zeta, bath);
    v = state.v;
  }
};

void BM_forward_transform(benchmark::State& bench) {
  Fixture fx(static_cast<int>(bench.range(0)));
  for (auto _ : bench) benchmark::DoNotOptimize(fx.eng.forward(fx.v));
}

void BM_multiplier(benchmark::State& bench) {
  Fixture fx(static_cast<int>(bench.range(0)));
  const wgn::MultiplierSymbol half{0.5, 0.1};
  for (auto _ : bench) benchmark::DoNotOptimize(fx.eng.apply_multiplier(fx.v, half));
}

void BM_dealiased_product(benchmark::State& bench) {
  Fixture fx(static_cast<int>(bench.range(0)));
  for (auto _ : bench)
    benchmark::DoNotOptimize(fx.eng.dealiased_product({&fx.h, &fx.h, &fx.v}));
}

void BM_apply_elliptic(benchmark::State& bench) {
  Fixture fx(static_cast<int>(bench.range(0)));
  for (auto _ : bench)
    benchmark::DoNotOptimize(wgn::apply_elliptic(fx.ctx, fx.h, fx.bath, fx.v));
}

void BM_solve_elliptic_flat(benchmark::State& bench) {
  Fixture fx(static_cast<int>(bench.range(0)));
  const wgn::RealField ones(fx.grid.n_points, 1.0);
  const wgn::Bathymetry flat = wgn::flat_bathymetry(fx.grid);
  for (auto _ : bench)
    benchmark::DoNotOptimize(wgn::solve_elliptic(fx.ctx, ones, flat, fx.v));
}

void BM_solve_elliptic_variable(benchmark::State& bench) {
  Fixture fx(static_cast<int>(bench.range(0)));
  for (auto _ : bench)
    benchmark::DoNotOptimize(wgn::solve_elliptic(fx.ctx, fx.h, fx.bath, fx.v));
}

void BM_evolution_rhs(benchmark::State& bench) {
  Fixture fx(static_cast<int>(bench.range(0)));
  for (auto _ : bench)
    benchmark::DoNotOptimize(wgn::evolution_rhs(fx.ctx, fx.state, fx.bath));
}

void BM_rk4_step(benchmark::State& bench) {
  Fixture fx(static_cast<int>(bench.range(0)));
  for (auto _ : bench)
    benchmark::DoNotOptimize(wgn::rk4_step(fx.ctx, fx.state, fx.bath, 1e-3));
}

} // namespace

BENCHMARK(BM_forward_transform)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_multiplier)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_dealiased_product)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_apply_elliptic)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_solve_elliptic_flat)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_solve_elliptic_variable)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_evolution_rhs)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_rk4_step)->Arg(256)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();
