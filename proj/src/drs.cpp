#include "critpd/drs.hpp"

#include "critpd/errors.hpp"

#include <fmt/format.h>

namespace critpd {

DRSProblem::DRSProblem(MonotoneOp a, MonotoneOp b, Precond upsilon)
    : a_(std::move(a)), b_(std::move(b)), upsilon_(std::move(upsilon)) {
  if (a_.dim() != b_.dim() || a_.dim() != upsilon_.dim()) {
    throw DimensionError("DRSProblem: A, B and Upsilon dimensions differ");
  }
}

PDProblem DRSProblem::as_primal_dual() const {
  std::vector<DualBlock> blocks;
  blocks.push_back(DualBlock{b_, LinOp::identity(dim()), upsilon_.inverse()});
  return PDProblem(a_, upsilon_, std::move(blocks));
}

HVector drs_operator(const DRSProblem& p, const HVector& z) {
  const HVector ja = p.a().resolvent(p.upsilon(), z);
  return p.b().resolvent(p.upsilon(), 2.0 * ja - z) + z - ja;
}

HVector lambda_map(const DRSProblem& p, const PDState& z) {
  if (z.duals.size() != 1) throw DimensionError("lambda_map: expected a single dual block");
  return z.primal - p.upsilon().apply(z.duals.front());
}

KMResult drs_iterate(const DRSProblem& p, const HVector& z0, const RelaxationSchedule& schedule,
                     const KMOptions& options) {
  auto problem = std::make_shared<const DRSProblem>(p);
  const FixedPointMap g([problem](const PDState& z) { return PDState(drs_operator(*problem, z.primal)); },
                        PDState(HVector(p.dim())));
  return km_iterate(g, PDState(z0), schedule, options);
}

namespace {

class LambdaRecorder final : public Monitor {
 public:
  explicit LambdaRecorder(const DRSProblem& p) : p_(p) {}
  void observe(const IterationView& view, IterTrace&) override { z_.push_back(lambda_map(p_, view.current)); }
  void finish(const PDState& final_state) override { z_.push_back(lambda_map(p_, final_state)); }
  std::vector<HVector> take() { return std::move(z_); }

 private:
  const DRSProblem& p_;
  std::vector<HVector> z_;
};

}  // namespace

PDDRSResult pd_drs_iterate(const DRSProblem& p, const HVector& x0, const HVector& u0,
                           const RelaxationSchedule& schedule, const KMOptions& options) {
  if (x0.size() != p.dim() || u0.size() != p.dim()) throw DimensionError("pd_drs_iterate: initial point dimension");
  LambdaRecorder recorder(p);
  KMOptions opts = options;
  opts.monitors.push_back(&recorder);
  PDDRSResult result;
  result.run = km_iterate(primal_dual_map(p.as_primal_dual()), PDState(x0, {u0}), schedule, opts);
  result.z_sequence = recorder.take();
  return result;
}

PDState fixed_point_transport(const DRSProblem& p, const HVector& z_hat, double tol) {
  if (z_hat.size() != p.dim()) throw DimensionError("fixed_point_transport: dimension mismatch");
  const double gap = norm(drs_operator(p, z_hat) - z_hat);
  if (gap > tol * (1.0 + norm(z_hat))) {
    throw DomainError(fmt::format("fixed_point_transport: ||G z - z|| = {} is not below tolerance", gap));
  }
  HVector x = p.upsilon().apply_inverse_identity_plus_square(z_hat);
  HVector u = -p.upsilon().apply(x);
  return PDState(std::move(x), {std::move(u)});
}

}  // namespace critpd
