#include "critpd/range_diagnostics.hpp"

#include "critpd/errors.hpp"

#include <fmt/format.h>

namespace critpd {

RangeDiagnostics::RangeDiagnostics(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors,
                                   PDState layout)
    : eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)),
      layout_(std::move(layout)) {
  const Index n = eigenvalues_.size();
  max_eig_ = n > 0 ? eigenvalues_.maxCoeff() : 0.0;
  if (max_eig_ <= 0.0) return;
  const double cutoff = kRankCutoff * max_eig_;
  for (Index i = 0; i < n; ++i) {
    if (eigenvalues_[i] > cutoff) {
      rank_ = n - i;
      min_nonzero_ = eigenvalues_[i];
      break;
    }
  }
}

std::vector<PDState> RangeDiagnostics::kernel_basis() const {
  std::vector<PDState> basis;
  for (Index i = 0; i < kernel_dim(); ++i) {
    basis.push_back(unflatten(eigenvectors_.col(i), layout_));
  }
  return basis;
}

PDState RangeDiagnostics::project_range(const PDState& z) const {
  const auto range = eigenvectors_.rightCols(rank_);
  Eigen::VectorXd flat = flatten(z);
  return unflatten(range * (range.transpose() * flat), z);
}

PDState RangeDiagnostics::project_kernel(const PDState& z) const {
  const auto kernel = eigenvectors_.leftCols(kernel_dim());
  Eigen::VectorXd flat = flatten(z);
  return unflatten(kernel * (kernel.transpose() * flat), z);
}

namespace {

RangeDiagnostics analyze(const Eigen::MatrixXd& m, PDState layout) {
  Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) throw LinearSolveError("dense_range_diagnostics: eigensolver failed");
  return RangeDiagnostics(eig.eigenvalues(), eig.eigenvectors(), std::move(layout));
}

}  // namespace

RangeDiagnostics dense_range_diagnostics(const SaddleOpV& v, Index max_dim) {
  const Index n = v.total_dim();
  if (n > max_dim) {
    throw DimensionError(fmt::format("dense_range_diagnostics: dimension {} exceeds limit {}", n, max_dim));
  }
  PDState layout = v.zero_state();
  Eigen::MatrixXd dense(n, n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  for (Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    dense.col(j) = flatten(v.apply(unflatten(e, layout)));
    e[j] = 0.0;
  }
  return analyze(dense, std::move(layout));
}

RangeDiagnostics dense_range_diagnostics(const Eigen::MatrixXd& symmetric, Index max_dim) {
  if (symmetric.rows() != symmetric.cols()) throw DimensionError("dense_range_diagnostics: matrix not square");
  if (symmetric.rows() > max_dim) {
    throw DimensionError(fmt::format("dense_range_diagnostics: dimension {} exceeds limit {}",
                                     symmetric.rows(), max_dim));
  }
  return analyze(symmetric, PDState(HVector(symmetric.rows())));
}

}  // namespace critpd
