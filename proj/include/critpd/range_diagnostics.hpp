#pragma once

#include "critpd/hvector.hpp"
#include "critpd/saddle.hpp"

#include <vector>

namespace critpd {

/// Default cap on the total dimension for dense diagnostics.
inline constexpr Index kDenseDiagnosticsLimit = 4096;
/// Eigenvalues above this fraction of the largest one count as nonzero.
inline constexpr double kRankCutoff = 1e-10;

/// Spectral split of a symmetric positive semidefinite operator into its
/// range and kernel. Test-scale tool: the solvers never need it.
class RangeDiagnostics {
 public:
  RangeDiagnostics(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors, PDState layout);

  Index rank() const noexcept { return rank_; }
  /// Smallest retained eigenvalue alpha, with <Vz, z> >= alpha ||z||^2 on ran V.
  /// Zero when the rank is zero.
  double min_nonzero_eig() const noexcept { return min_nonzero_; }
  double max_eig() const noexcept { return max_eig_; }
  Index kernel_dim() const noexcept { return eigenvalues_.size() - rank_; }

  /// Ascending eigenvalues and the matching orthonormal eigenvectors (columns).
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const noexcept { return eigenvectors_; }

  /// Orthonormal kernel basis, unflattened with the block layout.
  std::vector<PDState> kernel_basis() const;
  PDState project_range(const PDState& z) const;
  PDState project_kernel(const PDState& z) const;

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  PDState layout_;
  Index rank_ = 0;
  double min_nonzero_ = 0.0;
  double max_eig_ = 0.0;
};

/// Materializes V as a dense symmetric matrix and splits its spectrum.
/// Throws DimensionError when V's total dimension exceeds max_dim.
RangeDiagnostics dense_range_diagnostics(const SaddleOpV& v, Index max_dim = kDenseDiagnosticsLimit);

/// Same analysis for a raw symmetric matrix, treated as a single block.
RangeDiagnostics dense_range_diagnostics(const Eigen::MatrixXd& symmetric,
                                         Index max_dim = kDenseDiagnosticsLimit);

}  // namespace critpd
