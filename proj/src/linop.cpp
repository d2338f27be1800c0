#include "critpd/linop.hpp"

#include "critpd/errors.hpp"

#include <fmt/format.h>

#include <memory>

namespace critpd {

LinOp::LinOp(Index dom_dim, Index cod_dim, Map forward, Map adjoint, std::string name)
    : dom_dim_(dom_dim),
      cod_dim_(cod_dim),
      forward_(std::move(forward)),
      adjoint_(std::move(adjoint)),
      name_(std::move(name)) {
  if (dom_dim_ <= 0 || cod_dim_ <= 0) throw DimensionError("LinOp: dimensions must be positive");
  if (!forward_ || !adjoint_) throw DomainError("LinOp: forward and adjoint maps are required");
}

LinOp LinOp::identity(Index n) {
  auto id = [](const HVector& x) { return x; };
  return LinOp(n, n, id, id, "identity");
}

LinOp LinOp::scaled_identity(Index n, double scale) {
  auto f = [scale](const HVector& x) { return scale * x; };
  return LinOp(n, n, f, f, fmt::format("{}*identity", scale));
}

LinOp LinOp::from_matrix(Eigen::MatrixXd matrix, std::string name) {
  auto m = std::make_shared<const Eigen::MatrixXd>(std::move(matrix));
  auto fwd = [m](const HVector& x) { return HVector(Eigen::VectorXd(*m * x.values())); };
  auto adj = [m](const HVector& y) {
    return HVector(Eigen::VectorXd(m->transpose() * y.values()));
  };
  return LinOp(m->cols(), m->rows(), fwd, adj, std::move(name));
}

HVector LinOp::apply(const HVector& x) const {
  if (x.size() != dom_dim_) {
    throw DimensionError(
        fmt::format("{}: input length {} does not match domain {}", name_, x.size(), dom_dim_));
  }
  return forward_(x);
}

HVector LinOp::apply_adjoint(const HVector& y) const {
  if (y.size() != cod_dim_) {
    throw DimensionError(
        fmt::format("{}*: input length {} does not match codomain {}", name_, y.size(), cod_dim_));
  }
  return adjoint_(y);
}

LinOp LinOp::adjoint() const { return LinOp(cod_dim_, dom_dim_, adjoint_, forward_, name_ + "*"); }

LinOp compose(const LinOp& outer, const LinOp& inner) {
  if (outer.dom_dim() != inner.cod_dim()) throw DimensionError("compose: inner codomain != outer domain");
  auto fwd = [outer, inner](const HVector& x) { return outer.apply(inner.apply(x)); };
  auto adj = [outer, inner](const HVector& y) {
    return inner.apply_adjoint(outer.apply_adjoint(y));
  };
  return LinOp(inner.dom_dim(), outer.cod_dim(), fwd, adj, outer.name() + "." + inner.name());
}

LinOp normal_operator(const LinOp& a) { return compose(a.adjoint(), a); }

Eigen::MatrixXd materialize(const LinOp& op) {
  Eigen::MatrixXd m(op.cod_dim(), op.dom_dim());
  HVector e(op.dom_dim());
  for (Index j = 0; j < op.dom_dim(); ++j) {
    e[j] = 1.0;
    m.col(j) = op.apply(e).values();
    e[j] = 0.0;
  }
  return m;
}

}  // namespace critpd
