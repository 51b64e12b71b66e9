#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "wgn/field.hpp"
#include "wgn/grid.hpp"
#include "wgn/symbol.hpp"

namespace wgn {

// Transform engine bound to one grid. Owns FFTW plans and scratch buffers,
// so instances are not copyable and calls are not thread safe; concurrent
// work uses one engine per thread. Plan creation/destruction is serialized
// internally (FFTW's planner is not reentrant), and plans are built with
// FFTW_ESTIMATE so results do not depend on planner timing.
//
// Conventions, fixed across the project:
//   forward:  c_k = (1/n) * sum_j f_j exp(-i k x_j)   (c_0 = mean of f)
//   inverse:  f_j = sum_k c_k exp(+i k x_j)
//   dealias:  zero all modes with |j| > floor(n/3)    (2/3 rule)
//   derivative: multiply by (i k)^order, Nyquist mode zeroed for odd orders
class Spectral {
 public:
  explicit Spectral(Grid grid);
  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  const Grid& grid() const { return grid_; }

  SpectrumField forward(const RealField& f);
  RealField inverse(const SpectrumField& coeffs);

  // Applies a real even multiplier given as a per-mode table (size n) or as
  // a symbol evaluated at the grid wavenumbers.
  RealField apply_multiplier(const RealField& f, const std::vector<double>& table);
  RealField apply_multiplier(const RealField& f, const MultiplierSymbol& symbol);
  // General complex table; caller is responsible for conjugate symmetry.
  RealField apply_multiplier(const RealField& f, const std::vector<std::complex<double>>& table);

  RealField derivative(const RealField& f, int order);

  RealField dealias(const RealField& f);

  // Pointwise product of 2..5 factors followed by a single truncation.
  // Factors are sampled fields; only the final product is dealiased.
  RealField dealiased_product(std::initializer_list<const RealField*> factors);

  // | f |_{H^s} with |f|^2 = length * sum_k (1+k^2)^s |c_k|^2.
  double sobolev_norm(const RealField& f, double s);
  // H^s norm strengthened by sqrt(mu) * sum_k |k| (1+k^2)^s |c_k|^2.
  double x_mu_norm(const RealField& f, double s, double mu);

  double l2_norm(const RealField& f) const;          // sqrt(dx * sum f^2)
  double inner(const RealField& a, const RealField& b) const;  // dx * sum a*b
  double mean(const RealField& f) const;

  // 1.0 for kept modes, 0.0 for truncated ones (size n).
  const std::vector<double>& dealias_mask() const { return mask_; }

  // Evaluates a symbol at every grid wavenumber.
  std::vector<double> symbol_table(const MultiplierSymbol& symbol) const;

 private:
  void load(const RealField& f);
  template <typename Scale>
  RealField transform_pair(const RealField& f, Scale&& scale_mode);

  Grid grid_;
  std::vector<double> mask_;
  std::complex<double>* in_ = nullptr;
  std::complex<double>* spec_ = nullptr;
  std::complex<double>* out_ = nullptr;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
};

} // namespace wgn
