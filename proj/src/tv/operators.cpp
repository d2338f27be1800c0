#include "critpd/tv/operators.hpp"

#include "critpd/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace critpd::tv {

namespace {

HVector shaped(Index n1, Index n2) { return HVector(Eigen::VectorXd(n1 * n2), {n1, n2}); }

HVector diff_cols(const HVector& x, Index n1, Index n2) {
  HVector out = shaped(n1, n2);
  const double* in = x.values().data();
  double* o = out.values().data();
  for (Index i = 0; i < n1; ++i) {
    const double* a = in + i * n2;
    double* b = o + i * n2;
    for (Index j = 0; j + 1 < n2; ++j) b[j] = a[j + 1] - a[j];
    b[n2 - 1] = 0.0;
  }
  return out;
}

HVector diff_cols_adjoint(const HVector& y, Index n1, Index n2) {
  HVector out = shaped(n1, n2);
  const double* in = y.values().data();
  double* o = out.values().data();
  for (Index i = 0; i < n1; ++i) {
    const double* a = in + i * n2;
    double* b = o + i * n2;
    b[0] = -a[0];
    for (Index j = 1; j + 1 < n2; ++j) b[j] = a[j - 1] - a[j];
    b[n2 - 1] = a[n2 - 2];
  }
  return out;
}

HVector diff_rows(const HVector& x, Index n1, Index n2) {
  HVector out = shaped(n1, n2);
  const auto& in = x.values();
  auto& o = out.values();
  const Index body = (n1 - 1) * n2;
  o.head(body) = in.segment(n2, body) - in.head(body);
  o.tail(n2).setZero();
  return out;
}

HVector diff_rows_adjoint(const HVector& y, Index n1, Index n2) {
  HVector out = shaped(n1, n2);
  const auto& in = y.values();
  auto& o = out.values();
  o.head(n2) = -in.head(n2);
  const Index mid = (n1 - 2) * n2;
  if (mid > 0) o.segment(n2, mid) = in.head(mid) - in.segment(n2, mid);
  o.tail(n2) = in.segment((n1 - 2) * n2, n2);
  return out;
}

}  // namespace

GradientOps build_gradient_ops(Index n1, Index n2) {
  if (n1 < 2 || n2 < 2) throw DimensionError(fmt::format("build_gradient_ops: {}x{} grid is too small", n1, n2));
  const Index n = n1 * n2;
  LinOp d1(
      n, n, [n1, n2](const HVector& x) { return diff_cols(x, n1, n2); },
      [n1, n2](const HVector& y) { return diff_cols_adjoint(y, n1, n2); }, "D1");
  LinOp d2(
      n, n, [n1, n2](const HVector& x) { return diff_rows(x, n1, n2); },
      [n1, n2](const HVector& y) { return diff_rows_adjoint(y, n1, n2); }, "D2");
  return GradientOps{std::move(d1), std::move(d2)};
}

double neumann_difference_sqnorm(Index n) {
  if (n < 2) throw DimensionError("neumann_difference_sqnorm: need at least two samples");
  return 2.0 + 2.0 * std::cos(std::numbers::pi / static_cast<double>(n));
}

Eigen::MatrixXd gaussian_kernel(Index size, double std) {
  if (size < 1 || size % 2 == 0) throw DomainError(fmt::format("gaussian_kernel: size {} must be odd", size));
  if (!(std > 0.0)) throw DomainError("gaussian_kernel: std must be positive");
  const Index c = size / 2;
  Eigen::MatrixXd k(size, size);
  for (Index a = 0; a < size; ++a) {
    for (Index b = 0; b < size; ++b) {
      const double da = static_cast<double>(a - c);
      const double db = static_cast<double>(b - c);
      k(a, b) = std::exp(-(da * da + db * db) / (2.0 * std * std));
    }
  }
  return k / k.sum();
}

PeriodicConvolution build_gaussian_blur(Index n1, Index n2, Index size, double std) {
  return PeriodicConvolution(n1, n2, gaussian_kernel(size, std));
}

}  // namespace critpd::tv
