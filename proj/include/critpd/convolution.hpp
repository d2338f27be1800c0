#pragma once

#include "critpd/hvector.hpp"
#include "critpd/linop.hpp"

#include <complex>
#include <memory>
#include <vector>

namespace critpd {

/// Two-dimensional periodic convolution on an n1 x n2 grid (row-major), applied
/// through its FFT diagonalization. The kernel has odd side lengths and is
/// centered at its middle entry.
///
/// Instances are immutable; apply and the shifted normal solve are safe to call
/// from several threads.
class PeriodicConvolution {
 public:
  PeriodicConvolution(Index n1, Index n2, const Eigen::MatrixXd& kernel);

  Index rows() const noexcept { return n1_; }
  Index cols() const noexcept { return n2_; }
  Index size() const noexcept { return n1_ * n2_; }
  const Eigen::MatrixXd& kernel() const noexcept { return kernel_; }

  HVector apply(const HVector& x) const;
  HVector apply_adjoint(const HVector& x) const;
  /// (Id + tau R^* R)^{-1} rhs, diagonal in the Fourier basis.
  HVector solve_identity_plus_normal(double tau, const HVector& rhs) const;

  LinOp as_linop() const;

 private:
  struct Plans;

  HVector filter(const HVector& x, const std::vector<std::complex<double>>& multiplier) const;

  Index n1_;
  Index n2_;
  Eigen::MatrixXd kernel_;
  std::shared_ptr<const Plans> plans_;
  std::vector<std::complex<double>> spectrum_;
  std::vector<std::complex<double>> spectrum_conj_;
  std::vector<double> spectrum_sq_;
};

}  // namespace critpd
