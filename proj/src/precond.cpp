#include "critpd/precond.hpp"

#include "critpd/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace critpd {

Precond Precond::scalar(Index dim, double value) {
  if (dim <= 0) throw DimensionError("Precond::scalar: dimension must be positive");
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(fmt::format("Precond::scalar: value {} is not strictly positive", value));
  }
  Precond p;
  p.kind_ = Kind::scalar;
  p.dim_ = dim;
  p.scalar_ = value;
  p.min_eig_ = value;
  p.max_eig_ = value;
  return p;
}

Precond Precond::diagonal(Eigen::VectorXd entries) {
  if (entries.size() == 0) throw DimensionError("Precond::diagonal: empty diagonal");
  if (!entries.allFinite() || entries.minCoeff() <= 0.0) {
    throw DomainError("Precond::diagonal: entries must be finite and strictly positive");
  }
  Precond p;
  p.kind_ = Kind::diagonal;
  p.dim_ = entries.size();
  p.min_eig_ = entries.minCoeff();
  p.max_eig_ = entries.maxCoeff();
  p.diag_ = std::move(entries);
  return p;
}

Precond Precond::dense(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() == 0 || matrix.rows() != matrix.cols()) {
    throw DimensionError("Precond::dense: matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("Precond::dense: matrix is not symmetric");
  }
  Eigen::MatrixXd sym = 0.5 * (matrix + matrix.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) throw LinearSolveError("Precond::dense: eigendecomposition failed");
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw DomainError("Precond::dense: matrix is not positive definite");
  }
  Precond p;
  p.kind_ = Kind::dense;
  p.dim_ = matrix.rows();
  p.min_eig_ = eig.eigenvalues().minCoeff();
  p.max_eig_ = eig.eigenvalues().maxCoeff();
  p.spectral_ = std::make_shared<const Spectral>(
      Spectral{std::move(sym), eig.eigenvectors(), eig.eigenvalues()});
  return p;
}

void Precond::check_input(const HVector& x) const {
  if (x.size() != dim_) {
    throw DimensionError(
        fmt::format("Precond: input length {} does not match dimension {}", x.size(), dim_));
  }
}

HVector Precond::spectral_apply(const HVector& x, const Eigen::VectorXd& weights) const {
  const auto& s = *spectral_;
  Eigen::VectorXd coeffs = s.eigenvectors.transpose() * x.values();
  coeffs.array() *= weights.array();
  return HVector(Eigen::VectorXd(s.eigenvectors * coeffs), x.dims());
}

HVector Precond::apply(const HVector& x) const {
  check_input(x);
  switch (kind_) {
    case Kind::scalar:
      return scalar_ * x;
    case Kind::diagonal:
      return HVector(Eigen::VectorXd(diag_.cwiseProduct(x.values())), x.dims());
    case Kind::dense:
      return HVector(Eigen::VectorXd(spectral_->matrix * x.values()), x.dims());
  }
  return x;
}

HVector Precond::apply_inverse(const HVector& x) const {
  check_input(x);
  switch (kind_) {
    case Kind::scalar:
      return (1.0 / scalar_) * x;
    case Kind::diagonal:
      return HVector(Eigen::VectorXd(x.values().cwiseQuotient(diag_)), x.dims());
    case Kind::dense:
      return spectral_apply(x, spectral_->eigenvalues.cwiseInverse());
  }
  return x;
}

HVector Precond::apply_sqrt(const HVector& x) const {
  check_input(x);
  switch (kind_) {
    case Kind::scalar:
      return std::sqrt(scalar_) * x;
    case Kind::diagonal:
      return HVector(Eigen::VectorXd(diag_.cwiseSqrt().cwiseProduct(x.values())), x.dims());
    case Kind::dense:
      return spectral_apply(x, spectral_->eigenvalues.cwiseSqrt());
  }
  return x;
}

double Precond::scalar_value() const {
  if (kind_ != Kind::scalar) throw UnsupportedResolventError("Precond: not a scalar preconditioner");
  return scalar_;
}

Eigen::VectorXd Precond::diagonal_entries() const {
  switch (kind_) {
    case Kind::scalar:
      return Eigen::VectorXd::Constant(dim_, scalar_);
    case Kind::diagonal:
      return diag_;
    case Kind::dense:
      break;
  }
  throw UnsupportedResolventError("Precond: dense preconditioner has no diagonal representation");
}

Eigen::MatrixXd Precond::to_dense() const {
  if (kind_ == Kind::dense) return spectral_->matrix;
  return diagonal_entries().asDiagonal();
}

Precond Precond::inverse() const {
  switch (kind_) {
    case Kind::scalar:
      return scalar(dim_, 1.0 / scalar_);
    case Kind::diagonal:
      return diagonal(diag_.cwiseInverse());
    case Kind::dense:
      break;
  }
  const auto& s = *spectral_;
  Eigen::MatrixXd inv =
      s.eigenvectors * s.eigenvalues.cwiseInverse().asDiagonal() * s.eigenvectors.transpose();
  inv = 0.5 * (inv + inv.transpose());
  return dense(inv);
}

HVector Precond::apply_inverse_identity_plus_square(const HVector& x) const {
  check_input(x);
  switch (kind_) {
    case Kind::scalar:
      return (1.0 / (1.0 + scalar_ * scalar_)) * x;
    case Kind::diagonal: {
      Eigen::VectorXd w = (1.0 + diag_.array().square()).inverse().matrix();
      return HVector(Eigen::VectorXd(w.cwiseProduct(x.values())), x.dims());
    }
    case Kind::dense:
      break;
  }
  const auto& m = spectral_->matrix;
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(dim_, dim_) + m * m;
  Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() != Eigen::Success) throw LinearSolveError("(Id + P^2) factorization failed");
  return HVector(Eigen::VectorXd(llt.solve(x.values())), x.dims());
}

LinOp Precond::as_linop() const {
  auto self = *this;
  auto f = [self](const HVector& x) { return self.apply(x); };
  return LinOp(dim_, dim_, f, f, "precond");
}

}  // namespace critpd
