#pragma once

#include "critpd/convolution.hpp"
#include "critpd/linop.hpp"

namespace critpd::tv {

/// Horizontal (D1, along columns) and vertical (D2, along rows) forward
/// differences with Neumann boundary: the last difference in each line is zero.
struct GradientOps {
  LinOp d1;
  LinOp d2;
};

GradientOps build_gradient_ops(Index n1, Index n2);

/// Largest eigenvalue of D^*D for Neumann forward differences on n samples,
/// 2 + 2 cos(pi / n). ||D1||^2 uses n = n2 and ||D2||^2 uses n = n1.
double neumann_difference_sqnorm(Index n);

/// Normalized truncated Gaussian, size x size, centered.
Eigen::MatrixXd gaussian_kernel(Index size, double std);

/// Periodic Gaussian blur on an n1 x n2 grid. Throws DomainError for even sizes.
PeriodicConvolution build_gaussian_blur(Index n1, Index n2, Index size, double std);

}  // namespace critpd::tv
