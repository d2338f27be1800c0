#include "critpd/tv/algorithm.hpp"

#include "critpd/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <memory>

namespace critpd::tv {

DifferenceNorms difference_norms(Index n1, Index n2) {
  return DifferenceNorms{neumann_difference_sqnorm(n2), neumann_difference_sqnorm(n1)};
}

double boundary_value(const StepSizes& s, const DifferenceNorms& d) {
  return s.tau * (s.sigma1 * d.d1_sq + s.sigma2 * d.d2_sq + s.sigma3);
}

StepSizes boundary_steps(double tau, double gamma1, double gamma2, const DifferenceNorms& d) {
  if (!(tau > 0.0)) throw DomainError("boundary_steps: tau must be positive");
  if (!(gamma1 > 0.0 && gamma1 < 1.0) || !(gamma2 > 0.0 && gamma2 < 1.0)) {
    throw DomainError(fmt::format("boundary_steps: gammas ({}, {}) must lie in (0, 1)", gamma1, gamma2));
  }
  return StepSizes{tau, gamma1 * (1.0 - gamma2) / (tau * d.d1_sq), (1.0 - gamma1) * (1.0 - gamma2) / (tau * d.d2_sq),
                   gamma2 / tau};
}

StepSizes condat_steps(double tau, const DifferenceNorms& d) {
  if (!(tau > 0.0)) throw DomainError("condat_steps: tau must be positive");
  const double sigma = 1.0 / (tau * (1.0 + d.d1_sq + d.d2_sq));
  return StepSizes{tau, sigma, sigma, sigma};
}

std::pair<double, double> boundary_gammas(const StepSizes& s, const DifferenceNorms& d) {
  const double g2 = s.tau * s.sigma3;
  const double g1 = s.tau * s.sigma1 * d.d1_sq / (1.0 - g2);
  return {g1, g2};
}

void validate(const TVConfig& cfg, const DifferenceNorms& d) {
  const StepSizes& s = cfg.steps;
  if (!(s.tau > 0.0 && s.sigma1 > 0.0 && s.sigma2 > 0.0 && s.sigma3 > 0.0)) {
    throw DomainError(fmt::format("TVConfig: step sizes must be positive (tau={}, sigma=({}, {}, {}))", s.tau,
                                  s.sigma1, s.sigma2, s.sigma3));
  }
  if (!(cfg.lambda > 0.0 && cfg.lambda < 2.0)) throw DomainError("TVConfig: lambda must lie in (0, 2)");
  if (!(cfg.alpha >= 0.0)) throw DomainError("TVConfig: alpha must be nonnegative");
  if (!(cfg.eps > 0.0)) throw DomainError("TVConfig: eps must be positive");
  const double value = boundary_value(s, d);
  if (!(value <= 1.0 + kConditionTol)) {
    throw StepConditionError(fmt::format("TVConfig: tau (sigma1 |D1|^2 + sigma2 |D2|^2 + sigma3) = {} exceeds 1", value),
                             value);
  }
}

double tv_objective(const ImageGrid& x, const LinOp& r, const HVector& b, double alpha) {
  if (r.dom_dim() != x.size() || r.cod_dim() != b.size()) throw DimensionError("tv_objective: dimension mismatch");
  const GradientOps grad = build_gradient_ops(x.rows(), x.cols());
  const double fit = 0.5 * squared_norm(r.apply(x.pixels()) - b);
  const double tv = grad.d1.apply(x.pixels()).values().lpNorm<1>() + grad.d2.apply(x.pixels()).values().lpNorm<1>();
  return fit + alpha * tv;
}

PDProblem build_tv_problem(const TVConfig& cfg, const ImageGrid& observed, const PeriodicConvolution& blur) {
  if (blur.rows() != observed.rows() || blur.cols() != observed.cols()) {
    throw DimensionError("build_tv_problem: blur and image sizes differ");
  }
  const Index n = observed.size();
  auto fit = std::make_shared<const QuadDataFit>(blur, observed.pixels());
  GradientOps grad = build_gradient_ops(observed.rows(), observed.cols());
  std::vector<DualBlock> blocks;
  blocks.push_back(DualBlock{MonotoneOp::l1_subdifferential(n, cfg.alpha), std::move(grad.d1),
                             Precond::scalar(n, cfg.steps.sigma1)});
  blocks.push_back(DualBlock{MonotoneOp::l1_subdifferential(n, cfg.alpha), std::move(grad.d2),
                             Precond::scalar(n, cfg.steps.sigma2)});
  blocks.push_back(DualBlock{MonotoneOp::box_normal_cone(n, 0.0, observed.peak()), LinOp::identity(n),
                             Precond::scalar(n, cfg.steps.sigma3)});
  return PDProblem(MonotoneOp::quadratic_data_fit(std::move(fit)), Precond::scalar(n, cfg.steps.tau),
                   std::move(blocks));
}

TVResult run_algorithm1(const TVConfig& cfg, const ImageGrid& observed, const PeriodicConvolution& blur,
                        const TVRunOptions& options) {
  const DifferenceNorms d = difference_norms(observed.rows(), observed.cols());
  validate(cfg, d);
  const PDProblem problem = build_tv_problem(cfg, observed, blur);

  PDState z0 = options.initial ? *options.initial : PDState(observed.pixels(), {});
  if (!options.initial) {
    for (std::size_t i = 0; i < problem.blocks().size(); ++i) z0.duals.push_back(HVector::zeros(observed.pixels().dims()));
  }

  const std::vector<Index> dims = observed.pixels().dims();
  const auto image = [&dims, &observed](const HVector& v) { return ImageGrid(HVector(v.values(), dims), observed.peak()); };

  PDOptions opts;
  opts.km.eps = cfg.eps;
  opts.km.max_iter = cfg.max_iter;
  opts.km.monitors = options.monitors;
  opts.known_condition = boundary_value(cfg.steps, d);
  if (cfg.record_objective) {
    const LinOp r = blur.as_linop();
    const HVector b = observed.pixels();
    const double peak = observed.peak();
    const double alpha = cfg.alpha;
    opts.km.objective = [r, b, peak, alpha, dims](const PDState& z) {
      return tv_objective(ImageGrid(HVector(z.primal.values(), dims), peak), r, b, alpha);
    };
  }

  PDResult run = pd_iterate(problem, std::move(z0), RelaxationSchedule::constant(cfg.lambda), opts);

  const PDState solution = resolvent_W(problem, run.run.state);
  TVResult out{image(solution.primal),
               image(run.run.state.primal),
               std::move(run.run.state),
               std::move(run.run.trace),
               std::move(run.run.warnings),
               run.run.converged,
               run.run.iterations,
               run.condition.norm_sq_estimate,
               0.0,
               0.0};
  if (!out.trace.empty()) out.final_residual = out.trace.back().residual;
  out.objective = tv_objective(out.restored, blur.as_linop(), observed.pixels(), cfg.alpha);
  return out;
}

}  // namespace critpd::tv
