#include "critpd/primal_dual.hpp"

#include "critpd/errors.hpp"
#include "critpd/power_iteration.hpp"

#include <fmt/format.h>

#include <cmath>

namespace critpd {

PDProblem::PDProblem(MonotoneOp a, Precond upsilon, std::vector<DualBlock> blocks)
    : a_(std::move(a)), upsilon_(std::move(upsilon)), blocks_(std::move(blocks)) {
  if (a_.dim() != upsilon_.dim()) throw DimensionError("PDProblem: A and Upsilon dimensions differ");
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto& b = blocks_[i];
    if (b.link.dom_dim() != primal_dim()) {
      throw DimensionError(fmt::format("PDProblem: L_{} domain does not match the primal space", i));
    }
    if (b.link.cod_dim() != b.op.dim() || b.sigma.dim() != b.op.dim()) {
      throw DimensionError(fmt::format("PDProblem: block {} dimensions are inconsistent", i));
    }
  }
}

SaddleOpV PDProblem::saddle_operator() const {
  std::vector<Precond> sigmas;
  std::vector<LinOp> links;
  for (const auto& b : blocks_) {
    sigmas.push_back(b.sigma);
    links.push_back(b.link);
  }
  return SaddleOpV(upsilon_, std::move(sigmas), std::move(links));
}

PDState PDProblem::zero_state() const {
  PDState z;
  z.primal = HVector(primal_dim());
  for (const auto& b : blocks_) z.duals.emplace_back(b.op.dim());
  return z;
}

StepCondition classify_condition(double estimate) {
  return StepCondition{estimate, std::abs(estimate - 1.0) <= kConditionTol};
}

StepCondition step_condition(const PDProblem& p, std::uint64_t seed) {
  const Index n = p.primal_dim();
  const auto& upsilon = p.upsilon();
  const auto& blocks = p.blocks();
  auto sandwich = [&upsilon, &blocks](const HVector& x) {
    const HVector y = upsilon.apply_sqrt(x);
    HVector acc = y.zeros_like();
    for (const auto& b : blocks) acc += b.link.apply_adjoint(b.sigma.apply(b.link.apply(y)));
    return upsilon.apply_sqrt(acc);
  };
  const LinOp op(n, n, sandwich, sandwich, "step_condition");
  PowerIterationOptions opts;
  opts.seed = seed;
  return classify_condition(power_iteration_sqnorm(op, opts));
}

PDState resolvent_W(const PDProblem& p, const PDState& z) {
  const auto& blocks = p.blocks();
  if (z.primal.size() != p.primal_dim() || z.duals.size() != blocks.size()) {
    throw DimensionError("resolvent_W: state does not match problem blocks");
  }
  HVector coupling = z.primal.zeros_like();
  for (std::size_t i = 0; i < blocks.size(); ++i) coupling += blocks[i].link.apply_adjoint(z.duals[i]);

  PDState out;
  out.primal = p.primal_op().resolvent(p.upsilon(), z.primal - p.upsilon().apply(coupling));
  const HVector extrapolated = 2.0 * out.primal - z.primal;
  out.duals.reserve(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    out.duals.push_back(resolvent_inverse(b.op, b.sigma, z.duals[i] + b.sigma.apply(b.link.apply(extrapolated))));
  }
  return out;
}

double zero_inclusion_residual(const PDProblem& p, const PDState& z) {
  return v_seminorm(p.saddle_operator(), resolvent_W(p, z) - z);
}

FixedPointMap primal_dual_map(const PDProblem& p) {
  auto problem = std::make_shared<const PDProblem>(p);
  return FixedPointMap([problem](const PDState& z) { return resolvent_W(*problem, z); }, p.zero_state());
}

PDResult pd_iterate(const PDProblem& p, PDState z0, const RelaxationSchedule& schedule,
                    const PDOptions& options) {
  PDResult result;
  result.condition = options.known_condition ? classify_condition(*options.known_condition)
                                             : step_condition(p, options.seed);
  std::vector<std::string> warnings;
  if (!result.condition.admissible()) {
    const auto msg = fmt::format("step-size condition violated: estimate {} > 1 + {}",
                                 result.condition.norm_sq_estimate, kConditionTol);
    if (!options.allow_condition_violation) throw StepConditionError(msg, result.condition.norm_sq_estimate);
    warnings.push_back(msg + " (override set)");
  }
  result.run = km_iterate(primal_dual_map(p), std::move(z0), schedule, options.km);
  result.run.warnings.insert(result.run.warnings.begin(), warnings.begin(), warnings.end());
  return result;
}

}  // namespace critpd
