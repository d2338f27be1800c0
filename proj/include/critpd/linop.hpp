#pragma once

#include "critpd/hvector.hpp"

#include <functional>
#include <string>

namespace critpd {

/// Bounded linear map between finite-dimensional spaces, given by its forward
/// and adjoint actions. Copies share the underlying callables.
class LinOp {
 public:
  using Map = std::function<HVector(const HVector&)>;

  LinOp(Index dom_dim, Index cod_dim, Map forward, Map adjoint, std::string name = "linop");

  static LinOp identity(Index n);
  static LinOp scaled_identity(Index n, double scale);
  static LinOp from_matrix(Eigen::MatrixXd matrix, std::string name = "matrix");

  HVector apply(const HVector& x) const;
  HVector apply_adjoint(const HVector& y) const;

  Index dom_dim() const noexcept { return dom_dim_; }
  Index cod_dim() const noexcept { return cod_dim_; }
  const std::string& name() const noexcept { return name_; }

  LinOp adjoint() const;

 private:
  Index dom_dim_;
  Index cod_dim_;
  Map forward_;
  Map adjoint_;
  std::string name_;
};

/// outer . inner
LinOp compose(const LinOp& outer, const LinOp& inner);

/// The self-adjoint positive semidefinite map A*A.
LinOp normal_operator(const LinOp& a);

/// Dense cod_dim x dom_dim matrix of `op`, built column by column.
Eigen::MatrixXd materialize(const LinOp& op);

}  // namespace critpd
