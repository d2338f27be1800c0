#pragma once

#include "critpd/hvector.hpp"
#include "critpd/linop.hpp"

#include <memory>

namespace critpd {

/// Strongly monotone self-adjoint linear operator used as a step size
/// (Upsilon on the primal side, Sigma_i on the dual blocks).
///
/// Three families: scalar multiples of the identity, diagonal operators and
/// dense symmetric positive definite matrices. The dense family keeps an
/// eigendecomposition for the inverse and the square root.
class Precond {
 public:
  enum class Kind { scalar, diagonal, dense };

  static Precond scalar(Index dim, double value);
  static Precond diagonal(Eigen::VectorXd entries);
  static Precond dense(const Eigen::MatrixXd& matrix);

  HVector apply(const HVector& x) const;
  HVector apply_inverse(const HVector& x) const;
  HVector apply_sqrt(const HVector& x) const;

  Index dim() const noexcept { return dim_; }
  Kind kind() const noexcept { return kind_; }
  /// Smallest eigenvalue c with <Px, x> >= c ||x||^2.
  double strong_monotonicity_constant() const noexcept { return min_eig_; }
  double max_eigenvalue() const noexcept { return max_eig_; }

  /// The multiplier of a scalar preconditioner; throws for other kinds.
  double scalar_value() const;
  /// Diagonal entries (constant for the scalar kind); throws for dense.
  Eigen::VectorXd diagonal_entries() const;
  Eigen::MatrixXd to_dense() const;

  Precond inverse() const;
  /// (Id + P^2)^{-1} x, exact in closed form for scalar/diagonal kinds.
  HVector apply_inverse_identity_plus_square(const HVector& x) const;

  LinOp as_linop() const;

 private:
  struct Spectral {
    Eigen::MatrixXd matrix;
    Eigen::MatrixXd eigenvectors;
    Eigen::VectorXd eigenvalues;
  };

  Precond() = default;
  void check_input(const HVector& x) const;
  HVector spectral_apply(const HVector& x, const Eigen::VectorXd& weights) const;

  Kind kind_ = Kind::scalar;
  Index dim_ = 0;
  double scalar_ = 1.0;
  Eigen::VectorXd diag_;
  std::shared_ptr<const Spectral> spectral_;
  double min_eig_ = 1.0;
  double max_eig_ = 1.0;
};

}  // namespace critpd
