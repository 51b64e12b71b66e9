#include "wgn/operators.hpp"

#include <cmath>

namespace wgn {

namespace {

void require_positive_depth(const RealField& h) {
  const double m = min_value(h);
  if (!(m > 0.0)) throw std::domain_error("operators: non-positive depth");
}

// Plain (unweighted) dot product, fixed index order for determinism.
double dot(const RealField& a, const RealField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

} // namespace

OperatorContext::OperatorContext(Spectral& engine, PhysParams params, DispersionKind kind)
    : engine_(&engine), params_(params), kind_(kind) {
  const Grid& g = engine.grid();
  const int n = g.n_points;
  const std::vector<double>& mask = engine.dealias_mask();

  half_deriv_.resize(n);
  half_deriv_t_.resize(n);
  k2f_.resize(n);
  f_half_.resize(n);
  for (int i = 0; i < n; ++i) {
    const double k = g.wavenumbers[i];
    const double f1 = kind_ == DispersionKind::full ? whitham_symbol(k, params_.mu, 1.0) : 1.0;
    f_half_[i] = std::sqrt(f1);
    const double m = (i == n / 2) ? 0.0 : mask[i];  // Nyquist zeroed (odd operator)
    half_deriv_[i] = {0.0, k * f_half_[i] * m};
    half_deriv_t_[i] = {0.0, -k * f_half_[i] * m};
    k2f_[i] = mask[i] * k * k * f1;
  }
}

RealField depth(const OperatorContext& ctx, const RealField& zeta, const Bathymetry& bath) {
  const PhysParams& p = ctx.params();
  RealField h(zeta.size());
  for (std::size_t i = 0; i < zeta.size(); ++i)
    h[i] = 1.0 + p.epsilon * zeta[i] - p.beta * bath.b[i];
  return h;
}

RealField apply_dispersive(OperatorContext& ctx, const RealField& h,
                           const Bathymetry& bath, const RealField& v) {
  require_positive_depth(h);
  Spectral& eng = ctx.engine();
  const int n = eng.grid().n_points;
  const double beta = bath.beta;

  // P v and the transposed multiplier; apply_multiplier with the transpose
  // table computes -d_x F^{1/2} dealias(.), hence the sign flips below.
  const RealField pv = eng.apply_multiplier(v, ctx.half_derivative());

  RealField prod(n);
  for (int i = 0; i < n; ++i) prod[i] = h[i] * h[i] * h[i] * pv[i];
  const RealField t1 = eng.apply_multiplier(prod, ctx.half_derivative_transpose());

  RealField result(n);
  if (beta == 0.0) {
    for (int i = 0; i < n; ++i) result[i] = t1[i] / (3.0 * h[i]);
    return result;
  }

  for (int i = 0; i < n; ++i) prod[i] = h[i] * h[i] * (beta * bath.db[i]) * v[i];
  const RealField t2 = eng.apply_multiplier(prod, ctx.half_derivative_transpose());

  for (int i = 0; i < n; ++i) {
    const double bp = beta * bath.db[i];
    result[i] = t1[i] / (3.0 * h[i]) - t2[i] / (2.0 * h[i]) -
                0.5 * h[i] * bp * pv[i] + bp * bp * v[i];
  }
  return result;
}

RealField apply_elliptic(OperatorContext& ctx, const RealField& h,
                         const Bathymetry& bath, const RealField& v) {
  const double mu = ctx.params().mu;
  if (mu == 0.0) {
    require_positive_depth(h);
    RealField out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = h[i] * v[i];
    return out;
  }
  RealField tv = apply_dispersive(ctx, h, bath, v);
  for (std::size_t i = 0; i < v.size(); ++i) tv[i] = h[i] * (v[i] + mu * tv[i]);
  return tv;
}

std::pair<RealField, EllipticSolveReport> solve_elliptic(
    OperatorContext& ctx, const RealField& h, const Bathymetry& bath,
    const RealField& f, const SolverOptions& opts) {
  const double h0 = ctx.params().h0;
  const double min_h = min_value(h);
  if (min_h < h0)
    throw CavitationError("elliptic solve: depth below the cavitation floor", min_h);

  Spectral& eng = ctx.engine();
  const int n = eng.grid().n_points;
  const double mu = ctx.params().mu;

  const double norm_f = std::sqrt(dot(f, f));
  if (norm_f == 0.0) return {RealField(n, 0.0), {0, 0.0, true}};

  if (mu == 0.0) {
    // h v = f is diagonal; report the honest residual anyway.
    RealField v(n);
    for (int i = 0; i < n; ++i) v[i] = f[i] / h[i];
    double rr = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = f[i] - h[i] * v[i];
      rr += r * r;
    }
    return {std::move(v), {0, std::sqrt(rr) / norm_f, true}};
  }

  // Fourier-diagonal preconditioner: the elliptic symbol at the mean depth,
  // hbar + mu hbar^3 k^2 F(k) / 3 on kept modes, hbar beyond the band. For
  // constant depth over a kept-band right-hand side this is the exact
  // inverse and CG converges in one iteration.
  const double hbar = eng.mean(h);
  std::vector<double> minv(n);
  const auto& k2f = ctx.masked_k2f();
  for (int i = 0; i < n; ++i) minv[i] = 1.0 / (hbar + mu * hbar * hbar * hbar * k2f[i] / 3.0);

  RealField x(n, 0.0);
  RealField r = f;
  RealField z = eng.apply_multiplier(r, minv);
  RealField p = z;
  double rz = dot(r, z);

  EllipticSolveReport report;
  for (int it = 1; it <= opts.max_iter; ++it) {
    const RealField ap = apply_elliptic(ctx, h, bath, p);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) break;  // loss of positivity: give up, report below
    const double alpha = rz / pap;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    report.iterations = it;
    double rel = std::sqrt(dot(r, r)) / norm_f;
    if (rel <= opts.tol) {
      // Guard against recurrence drift: accept only the true residual.
      const RealField ax = apply_elliptic(ctx, h, bath, x);
      RealField rt(n);
      for (int i = 0; i < n; ++i) rt[i] = f[i] - ax[i];
      rel = std::sqrt(dot(rt, rt)) / norm_f;
      if (rel <= opts.tol) {
        report.final_residual = rel;
        report.converged = true;
        return {std::move(x), report};
      }
      r = std::move(rt);
      z = eng.apply_multiplier(r, minv);
      p = z;
      rz = dot(r, z);
      continue;
    }
    z = eng.apply_multiplier(r, minv);
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }

  report.final_residual = std::sqrt(dot(r, r)) / norm_f;
  report.converged = false;
  return {std::move(x), report};
}

RealField quadratic_q(OperatorContext& ctx, const RealField& h, const RealField& v) {
  require_positive_depth(h);
  Spectral& eng = ctx.engine();
  const int n = eng.grid().n_points;

  const RealField pv = eng.apply_multiplier(v, ctx.half_derivative());
  RealField prod(n);
  for (int i = 0; i < n; ++i) prod[i] = h[i] * h[i] * h[i] * pv[i] * pv[i];
  const RealField t = eng.apply_multiplier(prod, ctx.half_derivative_transpose());
  RealField q(n);
  for (int i = 0; i < n; ++i) q[i] = -(2.0 / 3.0) * t[i] / h[i];
  return eng.dealias(q);
}

RealField quadratic_qb(OperatorContext& ctx, const RealField& h,
                       const Bathymetry& bath, const RealField& v) {
  require_positive_depth(h);
  Spectral& eng = ctx.engine();
  const int n = eng.grid().n_points;
  const double beta = bath.beta;

  const RealField pv = eng.apply_multiplier(v, ctx.half_derivative());
  RealField prod(n);
  for (int i = 0; i < n; ++i) prod[i] = h[i] * h[i] * v[i] * v[i] * (beta * bath.d2b[i]);
  const RealField t = eng.apply_multiplier(prod, ctx.half_derivative_transpose());

  RealField qb(n);
  for (int i = 0; i < n; ++i) {
    const double bp = beta * bath.db[i];
    const double bpp = beta * bath.d2b[i];
    qb[i] = h[i] * pv[i] * pv[i] * bp - t[i] / (2.0 * h[i]) + v[i] * v[i] * bpp * bp;
  }
  return eng.dealias(qb);
}

RhsResult evolution_rhs(OperatorContext& ctx, const State& state,
                        const Bathymetry& bath, const SolverOptions& opts) {
  const PhysParams& par = ctx.params();
  Spectral& eng = ctx.engine();
  const int n = eng.grid().n_points;

  RealField h = depth(ctx, state.zeta, bath);
  const double min_h = min_value(h);
  if (min_h < par.h0)
    throw CavitationError("rhs: depth below the cavitation floor", min_h);

  RhsResult out;

  const RealField hv = eng.dealiased_product({&h, &state.v});
  out.dzeta = eng.derivative(hv, 1);
  for (int i = 0; i < n; ++i) out.dzeta[i] = -out.dzeta[i];

  const RealField dzx = eng.derivative(state.zeta, 1);
  RealField f = eng.dealiased_product({&h, &dzx});

  if (par.mu > 0.0 && par.epsilon > 0.0) {
    RealField q = quadratic_q(ctx, h, state.v);
    if (bath.beta > 0.0) {
      const RealField qb = quadratic_qb(ctx, h, bath, state.v);
      for (int i = 0; i < n; ++i) q[i] += qb[i];
    }
    const RealField hq = eng.dealiased_product({&h, &q});
    for (int i = 0; i < n; ++i) f[i] += par.mu * par.epsilon * hq[i];
  }

  auto [vi, report] = solve_elliptic(ctx, h, bath, f, opts);
  if (!report.converged)
    throw SolverError("rhs: elliptic solve did not converge", report);
  out.solve = report;

  out.dv.resize(n);
  for (int i = 0; i < n; ++i) out.dv[i] = -vi[i];
  if (par.epsilon > 0.0) {
    const RealField dvx = eng.derivative(state.v, 1);
    const RealField adv = eng.dealiased_product({&state.v, &dvx});
    for (int i = 0; i < n; ++i) out.dv[i] -= par.epsilon * adv[i];
  }
  return out;
}

} // namespace wgn
