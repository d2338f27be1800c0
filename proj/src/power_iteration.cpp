#include "critpd/power_iteration.hpp"

#include "critpd/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <random>

namespace critpd {

double power_iteration_sqnorm(const LinOp& op, const PowerIterationOptions& options) {
  if (op.dom_dim() != op.cod_dim()) throw DimensionError("power_iteration_sqnorm: operator must be square");
  if (!(options.tol > 0.0)) throw DomainError("power_iteration_sqnorm: tol must be positive");
  if (options.max_iter <= 0) throw DomainError("power_iteration_sqnorm: max_iter must be positive");

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  HVector v(op.dom_dim());
  for (Index i = 0; i < v.size(); ++i) v[i] = uniform(rng);
  v *= 1.0 / norm(v);

  double estimate = 0.0;
  for (int it = 1; it <= options.max_iter; ++it) {
    const HVector w = op.apply(v);
    const double rayleigh = v.values().dot(w.values());
    const double w_norm = w.values().norm();
    if (w_norm == 0.0) return 0.0;
    if (it > 1 && std::abs(rayleigh - estimate) <= options.tol * std::abs(rayleigh)) return rayleigh;
    estimate = rayleigh;
    v.values() = (1.0 / w_norm) * w.values();
  }
  throw PowerIterationError(
      fmt::format("power iteration did not reach tol {} in {} steps (last estimate {})", options.tol,
                  options.max_iter, estimate),
      estimate, options.max_iter);
}

}  // namespace critpd
