#include "critpd/convolution.hpp"

#include "critpd/errors.hpp"

#include <fftw3.h>
#include <fmt/format.h>

#include <mutex>

namespace critpd {

namespace {

// FFTW planning and plan destruction are not thread-safe; execution is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

Index wrap(Index i, Index n) { return ((i % n) + n) % n; }

}  // namespace

struct PeriodicConvolution::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  Plans(Index n1, Index n2) {
    const Index half = n2 / 2 + 1;
    std::lock_guard lock(fftw_planner_mutex());
    double* real = fftw_alloc_real(static_cast<size_t>(n1 * n2));
    fftw_complex* freq = fftw_alloc_complex(static_cast<size_t>(n1 * half));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward = fftw_plan_dft_r2c_2d(static_cast<int>(n1), static_cast<int>(n2), real, freq, flags);
    backward = fftw_plan_dft_c2r_2d(static_cast<int>(n1), static_cast<int>(n2), freq, real, flags);
    fftw_free(real);
    fftw_free(freq);
    if (forward == nullptr || backward == nullptr) throw LinearSolveError("FFTW planning failed");
  }

  ~Plans() {
    std::lock_guard lock(fftw_planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

PeriodicConvolution::PeriodicConvolution(Index n1, Index n2, const Eigen::MatrixXd& kernel)
    : n1_(n1), n2_(n2), kernel_(kernel) {
  if (n1 < 1 || n2 < 1) throw DimensionError("PeriodicConvolution: grid dimensions must be positive");
  if (kernel.rows() % 2 == 0 || kernel.cols() % 2 == 0) {
    throw DomainError(fmt::format("PeriodicConvolution: kernel size {}x{} must be odd", kernel.rows(),
                                  kernel.cols()));
  }
  plans_ = std::make_shared<const Plans>(n1, n2);

  std::vector<double> embedded(static_cast<size_t>(n1 * n2), 0.0);
  const Index c1 = kernel.rows() / 2;
  const Index c2 = kernel.cols() / 2;
  for (Index a = 0; a < kernel.rows(); ++a) {
    for (Index b = 0; b < kernel.cols(); ++b) {
      embedded[static_cast<size_t>(wrap(a - c1, n1) * n2 + wrap(b - c2, n2))] += kernel(a, b);
    }
  }
  const Index half = n2 / 2 + 1;
  spectrum_.resize(static_cast<size_t>(n1 * half));
  fftw_execute_dft_r2c(plans_->forward, embedded.data(),
                       reinterpret_cast<fftw_complex*>(spectrum_.data()));
  spectrum_conj_.resize(spectrum_.size());
  spectrum_sq_.resize(spectrum_.size());
  for (size_t k = 0; k < spectrum_.size(); ++k) {
    spectrum_conj_[k] = std::conj(spectrum_[k]);
    spectrum_sq_[k] = std::norm(spectrum_[k]);
  }
}

HVector PeriodicConvolution::filter(const HVector& x,
                                    const std::vector<std::complex<double>>& multiplier) const {
  if (x.size() != size()) {
    throw DimensionError(fmt::format("PeriodicConvolution: input length {} does not match grid {}x{}",
                                     x.size(), n1_, n2_));
  }
  std::vector<double> real(x.values().data(), x.values().data() + x.size());
  std::vector<std::complex<double>> freq(multiplier.size());
  fftw_execute_dft_r2c(plans_->forward, real.data(), reinterpret_cast<fftw_complex*>(freq.data()));
  const double scale = 1.0 / static_cast<double>(size());
  for (size_t k = 0; k < freq.size(); ++k) freq[k] *= multiplier[k] * scale;
  fftw_execute_dft_c2r(plans_->backward, reinterpret_cast<fftw_complex*>(freq.data()), real.data());
  HVector out = HVector::zeros({n1_, n2_});
  std::copy(real.begin(), real.end(), out.values().data());
  return out;
}

HVector PeriodicConvolution::apply(const HVector& x) const { return filter(x, spectrum_); }

HVector PeriodicConvolution::apply_adjoint(const HVector& x) const { return filter(x, spectrum_conj_); }

HVector PeriodicConvolution::solve_identity_plus_normal(double tau, const HVector& rhs) const {
  if (!(tau > 0.0)) throw DomainError("solve_identity_plus_normal: tau must be positive");
  std::vector<std::complex<double>> multiplier(spectrum_sq_.size());
  for (size_t k = 0; k < multiplier.size(); ++k) multiplier[k] = 1.0 / (1.0 + tau * spectrum_sq_[k]);
  return filter(rhs, multiplier);
}

LinOp PeriodicConvolution::as_linop() const {
  auto self = std::make_shared<const PeriodicConvolution>(*this);
  return LinOp(
      size(), size(), [self](const HVector& x) { return self->apply(x); },
      [self](const HVector& y) { return self->apply_adjoint(y); }, "periodic_convolution");
}

}  // namespace critpd
