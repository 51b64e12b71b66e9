#include "wgn/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace wgn {

namespace {

// FFTW's planner mutates global state; plan creation and destruction are
// serialized process-wide. Execution on distinct plans is safe concurrently.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void check_size(const Grid& grid, std::size_t got, const char* what) {
  if (got != static_cast<std::size_t>(grid.n_points))
    throw std::invalid_argument(std::string("spectral: ") + what + " has wrong length");
}

} // namespace

Spectral::Spectral(Grid grid) : grid_(std::move(grid)) {
  const int n = grid_.n_points;
  if (n <= 0) throw std::invalid_argument("spectral: empty grid");

  in_ = static_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
  spec_ = static_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
  out_ = static_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (!in_ || !spec_ || !out_) {
    fftw_free(in_); fftw_free(spec_); fftw_free(out_);
    throw std::bad_alloc();
  }

  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_fwd_ = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in_),
                                 reinterpret_cast<fftw_complex*>(spec_),
                                 FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(spec_),
                                 reinterpret_cast<fftw_complex*>(out_),
                                 FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("spectral: FFTW plan creation failed");

  mask_.resize(n);
  for (int i = 0; i < n; ++i) {
    const int j = (i < n / 2) ? i : i - n;
    mask_[i] = (std::abs(j) <= grid_.dealias_cutoff) ? 1.0 : 0.0;
  }
}

Spectral::~Spectral() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(in_);
  fftw_free(spec_);
  fftw_free(out_);
}

void Spectral::load(const RealField& f) {
  const int n = grid_.n_points;
  for (int i = 0; i < n; ++i) in_[i] = {f[i], 0.0};
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
}

// One forward/backward round trip; scale_mode(i) multiplies mode i and must
// fold in the 1/n forward normalization (the backward pass is unnormalized).
template <typename Scale>
RealField Spectral::transform_pair(const RealField& f, Scale&& scale_mode) {
  const int n = grid_.n_points;
  check_size(grid_, f.size(), "field");
  load(f);
  const double inv_n = 1.0 / n;
  for (int i = 0; i < n; ++i) spec_[i] *= scale_mode(i) * inv_n;
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  RealField result(n);
  for (int i = 0; i < n; ++i) result[i] = out_[i].real();
  return result;
}

SpectrumField Spectral::forward(const RealField& f) {
  const int n = grid_.n_points;
  check_size(grid_, f.size(), "field");
  load(f);
  SpectrumField coeffs(n);
  const double inv_n = 1.0 / n;
  for (int i = 0; i < n; ++i) coeffs[i] = spec_[i] * inv_n;
  return coeffs;
}

RealField Spectral::inverse(const SpectrumField& coeffs) {
  const int n = grid_.n_points;
  check_size(grid_, coeffs.size(), "spectrum");
  std::memcpy(spec_, coeffs.data(), sizeof(std::complex<double>) * n);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  RealField result(n);
  for (int i = 0; i < n; ++i) result[i] = out_[i].real();
  return result;
}

RealField Spectral::apply_multiplier(const RealField& f, const std::vector<double>& table) {
  check_size(grid_, table.size(), "multiplier table");
  return transform_pair(f, [&](int i) { return table[i]; });
}

RealField Spectral::apply_multiplier(const RealField& f, const MultiplierSymbol& symbol) {
  return transform_pair(f, [&](int i) { return symbol(grid_.wavenumbers[i]); });
}

RealField Spectral::apply_multiplier(const RealField& f,
                                     const std::vector<std::complex<double>>& table) {
  check_size(grid_, table.size(), "multiplier table");
  return transform_pair(f, [&](int i) { return table[i]; });
}

RealField Spectral::derivative(const RealField& f, int order) {
  if (order < 1 || order > 2) throw std::invalid_argument("spectral: derivative order must be 1 or 2");
  const int n = grid_.n_points;
  if (order == 1) {
    // i k, with the Nyquist mode zeroed: it has no odd-derivative partner
    // and keeping it would make the result complex.
    return transform_pair(f, [&](int i) {
      if (i == n / 2) return std::complex<double>(0.0, 0.0);
      return std::complex<double>(0.0, grid_.wavenumbers[i]);
    });
  }
  return transform_pair(f, [&](int i) {
    const double k = grid_.wavenumbers[i];
    return std::complex<double>(-k * k, 0.0);
  });
}

RealField Spectral::dealias(const RealField& f) {
  return transform_pair(f, [&](int i) { return mask_[i]; });
}

RealField Spectral::dealiased_product(std::initializer_list<const RealField*> factors) {
  if (factors.size() < 2 || factors.size() > 5)
    throw std::invalid_argument("spectral: dealiased_product takes 2 to 5 factors");
  const int n = grid_.n_points;
  RealField prod(n, 1.0);
  for (const RealField* f : factors) {
    check_size(grid_, f->size(), "product factor");
    for (int i = 0; i < n; ++i) prod[i] *= (*f)[i];
  }
  return dealias(prod);
}

double Spectral::sobolev_norm(const RealField& f, double s) {
  const SpectrumField c = forward(f);
  double sum = 0.0;
  for (int i = 0; i < grid_.n_points; ++i) {
    const double k = grid_.wavenumbers[i];
    sum += std::pow(1.0 + k * k, s) * std::norm(c[i]);
  }
  return std::sqrt(grid_.length * sum);
}

double Spectral::x_mu_norm(const RealField& f, double s, double mu) {
  const SpectrumField c = forward(f);
  double sum_h = 0.0, sum_half = 0.0;
  for (int i = 0; i < grid_.n_points; ++i) {
    const double k = grid_.wavenumbers[i];
    const double w = std::pow(1.0 + k * k, s) * std::norm(c[i]);
    sum_h += w;
    sum_half += std::abs(k) * w;
  }
  return std::sqrt(grid_.length * (sum_h + std::sqrt(mu) * sum_half));
}

double Spectral::l2_norm(const RealField& f) const {
  check_size(grid_, f.size(), "field");
  double sum = 0.0;
  for (double x : f) sum += x * x;
  return std::sqrt(grid_.dx * sum);
}

double Spectral::inner(const RealField& a, const RealField& b) const {
  check_size(grid_, a.size(), "field");
  check_size(grid_, b.size(), "field");
  double sum = 0.0;
  for (int i = 0; i < grid_.n_points; ++i) sum += a[i] * b[i];
  return grid_.dx * sum;
}

double Spectral::mean(const RealField& f) const {
  check_size(grid_, f.size(), "field");
  double sum = 0.0;
  for (double x : f) sum += x;
  return sum / grid_.n_points;
}

std::vector<double> Spectral::symbol_table(const MultiplierSymbol& symbol) const {
  std::vector<double> table(grid_.n_points);
  for (int i = 0; i < grid_.n_points; ++i) table[i] = symbol(grid_.wavenumbers[i]);
  return table;
}

} // namespace wgn
