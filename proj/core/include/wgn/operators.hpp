#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wgn/bathymetry.hpp"
#include "wgn/errors.hpp"
#include "wgn/params.hpp"
#include "wgn/spectral.hpp"
#include "wgn/state.hpp"

namespace wgn {

// full:      dispersive weight F from whitham_symbol
// classical: F replaced by the identity (plain Green-Naghdi operators)
enum class DispersionKind { full, classical };

struct SolverOptions {
  double tol = 1e-10;   // relative residual target |A v - f| / |f|
  int max_iter = 500;
};

struct EllipticSolveReport {
  int iterations = 0;
  double final_residual = 0.0;  // relative, in the plain L2 norm
  bool converged = false;
};

struct SolverError : std::runtime_error {
  SolverError(const std::string& what, EllipticSolveReport report_)
      : std::runtime_error(what), report(report_) {}
  EllipticSolveReport report;
};

// Binds an engine to a parameter set and precomputes the per-mode tables the
// operators need. The discretization is fixed by two choices that make the
// weighted operator below exactly symmetric on the grid:
//
//   * the half-derivative P = dealias . F^{1/2} . d_x is a single masked
//     multiplier, and every occurrence of "F^{1/2} d_x v" uses it;
//   * assembled pointwise products feeding "d_x F^{1/2}(...)" are truncated
//     once before that multiplier, i.e. the code applies d_x F^{1/2} dealias.
//
// With the Nyquist mode zeroed in P, the transpose of P is exactly
// -d_x F^{1/2} dealias, so the quadratic form of the dispersive operator is
// a sum of squares and symmetry holds to round-off, not just to truncation
// order.
class OperatorContext {
 public:
  OperatorContext(Spectral& engine, PhysParams params,
                  DispersionKind kind = DispersionKind::full);

  Spectral& engine() const { return *engine_; }
  const PhysParams& params() const { return params_; }
  DispersionKind kind() const { return kind_; }

  // Masked half-derivative table (i k F^{1/2}(k), truncated modes zeroed).
  const std::vector<std::complex<double>>& half_derivative() const { return half_deriv_; }
  // Its transpose -d_x F^{1/2} dealias (elementwise conjugate of the above).
  const std::vector<std::complex<double>>& half_derivative_transpose() const { return half_deriv_t_; }
  // k^2 F(k) on kept modes, zero elsewhere; drives the flat preconditioner.
  const std::vector<double>& masked_k2f() const { return k2f_; }
  // Unmasked F^{1/2}(k) table.
  const std::vector<double>& f_half() const { return f_half_; }

 private:
  Spectral* engine_;
  PhysParams params_;
  DispersionKind kind_;
  std::vector<std::complex<double>> half_deriv_;
  std::vector<std::complex<double>> half_deriv_t_;
  std::vector<double> k2f_;
  std::vector<double> f_half_;
};

// Total depth 1 + epsilon*zeta - beta*b.
RealField depth(const OperatorContext& ctx, const RealField& zeta, const Bathymetry& bath);

// Dispersive part T[h, beta b] of the momentum operator:
//
//   T v = -1/(3h) d_x F^{1/2}( h^3 F^{1/2} d_x v )
//         + 1/(2h) ( d_x F^{1/2}( h^2 (beta b') v ) - h^2 (beta b') F^{1/2} d_x v )
//         + (beta b')^2 v
//
// discretized as described on OperatorContext. Requires min h > 0.
RealField apply_dispersive(OperatorContext& ctx, const RealField& h,
                           const Bathymetry& bath, const RealField& v);

// Full elliptic operator h v + mu h T v. Self-adjoint in the plain L2 inner
// product and coercive with constant min(h) on the grid.
RealField apply_elliptic(OperatorContext& ctx, const RealField& h,
                         const Bathymetry& bath, const RealField& v);

// Solves (h + mu h T) v = f by preconditioned conjugate gradients from a
// zero initial guess. The preconditioner is the exact flat-bottom symbol at
// the mean depth, so constant-depth right-hand sides converge immediately.
// Requires min h >= h0 (throws CavitationError otherwise). A non-converged
// solve is reported, not thrown.
std::pair<RealField, EllipticSolveReport> solve_elliptic(
    OperatorContext& ctx, const RealField& h, const Bathymetry& bath,
    const RealField& f, const SolverOptions& opts = {});

// Quadratic velocity term 2/(3h) d_x F^{1/2}( h^3 (F^{1/2} d_x v)^2 ),
// truncated after assembly. Requires min h > 0.
RealField quadratic_q(OperatorContext& ctx, const RealField& h, const RealField& v);

// Topographic quadratic term
//   h (F^{1/2} d_x v)^2 (beta b') + 1/(2h) d_x F^{1/2}( h^2 v^2 (beta b'') )
//   + v^2 (beta b'') (beta b'),
// truncated after assembly. Requires min h > 0.
RealField quadratic_qb(OperatorContext& ctx, const RealField& h,
                       const Bathymetry& bath, const RealField& v);

struct RhsResult {
  RealField dzeta;
  RealField dv;
  EllipticSolveReport solve;
};

// Time derivative of (zeta, v):
//
//   dzeta/dt = -d_x( h v )
//   dv/dt    = -epsilon v d_x v
//              - (h + mu h T)^{-1} ( h d_x zeta + mu epsilon h (Q + Qb) )
//
// Throws CavitationError when min h < h0 and SolverError when the elliptic
// solve fails to converge.
RhsResult evolution_rhs(OperatorContext& ctx, const State& state,
                        const Bathymetry& bath, const SolverOptions& opts = {});

} // namespace wgn
