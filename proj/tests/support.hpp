#pragma once

#include "critpd/hvector.hpp"
#include "critpd/linop.hpp"
#include "critpd/precond.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace critpd::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Index uniform_index(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

inline HVector random_vector(Rng& rng, Index n, double lo = -1.0, double hi = 1.0) {
  HVector v(n);
  for (Index k = 0; k < n; ++k) v[k] = uniform(rng, lo, hi);
  return v;
}

inline Eigen::MatrixXd random_matrix(Rng& rng, Index rows, Index cols, double lo = -1.0, double hi = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = uniform(rng, lo, hi);
  return m;
}

inline Eigen::MatrixXd random_spd(Rng& rng, Index n, double floor = 0.5) {
  const Eigen::MatrixXd a = random_matrix(rng, n, n);
  return a * a.transpose() + floor * Eigen::MatrixXd::Identity(n, n);
}

inline PDState random_state(Rng& rng, Index primal, const std::vector<Index>& duals) {
  PDState z(random_vector(rng, primal));
  for (Index m : duals) z.duals.push_back(random_vector(rng, m));
  return z;
}

inline double spectral_norm_sq(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const double s = svd.singularValues()(0);
  return s * s;
}

/// argmin_y phi(y) + 1/2 (y - x)^2 per coordinate, by exhaustive search on a
/// uniform grid of [-10, 10] with spacing `step`.
inline HVector grid_prox(const std::function<double(double)>& phi, const HVector& x, double step = 1e-4) {
  HVector out(x.size());
  const long count = std::lround(20.0 / step);
  for (Index k = 0; k < x.size(); ++k) {
    double best = INFINITY;
    double arg = 0.0;
    for (long i = 0; i <= count; ++i) {
      const double y = -10.0 + static_cast<double>(i) * step;
      const double f = phi(y) + 0.5 * (y - x[k]) * (y - x[k]);
      if (f < best) {
        best = f;
        arg = y;
      }
    }
    out[k] = arg;
  }
  return out;
}

inline double max_abs_diff(const HVector& a, const HVector& b) { return (a.values() - b.values()).cwiseAbs().maxCoeff(); }

inline double max_abs_diff(const PDState& a, const PDState& b) {
  double worst = max_abs_diff(a.primal, b.primal);
  for (std::size_t i = 0; i < a.duals.size(); ++i) worst = std::max(worst, max_abs_diff(a.duals[i], b.duals[i]));
  return worst;
}

}  // namespace critpd::testing
