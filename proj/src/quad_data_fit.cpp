#include "critpd/quad_data_fit.hpp"

#include "critpd/errors.hpp"

#include <fmt/format.h>

namespace critpd {

QuadDataFit::QuadDataFit(const PeriodicConvolution& r, HVector b)
    : op_(r.as_linop()), data_(std::move(b)), convolution_(std::make_shared<const PeriodicConvolution>(r)) {
  if (data_.size() != r.size()) throw DimensionError("QuadDataFit: data length does not match R");
  adjoint_data_ = convolution_->apply_adjoint(data_);
}

QuadDataFit::QuadDataFit(const LinOp& r, HVector b) : op_(r), data_(std::move(b)) {
  if (data_.size() != r.cod_dim()) throw DimensionError("QuadDataFit: data length does not match R");
  if (r.dom_dim() > kDenseSolveLimit) {
    throw DimensionError(fmt::format("QuadDataFit: dense path limited to dimension {}", kDenseSolveLimit));
  }
  adjoint_data_ = op_.apply_adjoint(data_);
  const Eigen::MatrixXd m = materialize(op_);
  Eigen::MatrixXd normal = m.transpose() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(normal);
  if (eig.info() != Eigen::Success) throw LinearSolveError("QuadDataFit: eigendecomposition of R^*R failed");
  dense_ = std::make_shared<const Dense>(Dense{std::move(normal), eig.eigenvectors(), eig.eigenvalues()});
}

double QuadDataFit::value(const HVector& y) const { return 0.5 * squared_norm(op_.apply(y) - data_); }

HVector QuadDataFit::resolvent(double tau, const HVector& x) const {
  if (!(tau > 0.0)) throw DomainError(fmt::format("resolvent_quadratic: tau {} must be positive", tau));
  require_same_size(x, adjoint_data_, "resolvent_quadratic");
  HVector rhs = x + tau * adjoint_data_;
  if (convolution_) {
    HVector y = convolution_->solve_identity_plus_normal(tau, rhs);
    return HVector(std::move(y.values()), x.dims());
  }
  const auto& d = *dense_;
  Eigen::VectorXd coeffs = d.eigenvectors.transpose() * rhs.values();
  coeffs.array() /= 1.0 + tau * d.eigenvalues.array().max(0.0);
  return HVector(Eigen::VectorXd(d.eigenvectors * coeffs), x.dims());
}

HVector QuadDataFit::resolvent(const Precond& upsilon, const HVector& x) const {
  if (upsilon.kind() == Precond::Kind::scalar) return resolvent(upsilon.scalar_value(), x);
  if (!dense_) {
    throw UnsupportedResolventError("QuadDataFit: FFT path only supports scalar preconditioners");
  }
  const Index n = dim();
  const Eigen::MatrixXd u = upsilon.to_dense();
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) + u * dense_->normal;
  Eigen::VectorXd rhs = x.values() + u * adjoint_data_.values();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  Eigen::VectorXd y = lu.solve(rhs);
  const double rel = (system * y - rhs).norm() / std::max(rhs.norm(), 1e-300);
  if (!y.allFinite() || rel > 1e-8) {
    throw LinearSolveError(fmt::format("QuadDataFit: dense solve residual {} too large", rel));
  }
  return HVector(std::move(y), x.dims());
}

HVector resolvent_quadratic(const QuadDataFit& q, double tau, const HVector& x) { return q.resolvent(tau, x); }

}  // namespace critpd
