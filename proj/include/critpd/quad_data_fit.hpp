#pragma once

#include "critpd/convolution.hpp"
#include "critpd/hvector.hpp"
#include "critpd/linop.hpp"
#include "critpd/precond.hpp"

#include <memory>
#include <optional>

namespace critpd {

/// Least-squares data fit f(y) = 1/2 ||R y - b||^2.
///
/// The resolvent of tau df is (Id + tau R^*R)^{-1}(x + tau R^* b). When R is a
/// periodic convolution the solve is diagonal in the Fourier basis; otherwise
/// R^*R is materialized once and eigendecomposed (dense path, dim <= 4096).
class QuadDataFit {
 public:
  QuadDataFit(const PeriodicConvolution& r, HVector b);
  QuadDataFit(const LinOp& r, HVector b);

  const LinOp& op() const noexcept { return op_; }
  const HVector& data() const noexcept { return data_; }
  bool uses_fft() const noexcept { return convolution_ != nullptr; }
  Index dim() const noexcept { return op_.dom_dim(); }

  double value(const HVector& y) const;
  HVector resolvent(double tau, const HVector& x) const;
  /// (Id + Upsilon R^*R)^{-1}(x + Upsilon R^* b) for a general preconditioner
  /// (dense path only, or scalar Upsilon on either path).
  HVector resolvent(const Precond& upsilon, const HVector& x) const;

 private:
  struct Dense {
    Eigen::MatrixXd normal;
    Eigen::MatrixXd eigenvectors;
    Eigen::VectorXd eigenvalues;
  };

  LinOp op_;
  HVector data_;
  HVector adjoint_data_;
  std::shared_ptr<const PeriodicConvolution> convolution_;
  std::shared_ptr<const Dense> dense_;
};

inline constexpr Index kDenseSolveLimit = 4096;

HVector resolvent_quadratic(const QuadDataFit& q, double tau, const HVector& x);

}  // namespace critpd
