#pragma once

#include "critpd/km.hpp"
#include "critpd/linop.hpp"
#include "critpd/monotone.hpp"
#include "critpd/precond.hpp"
#include "critpd/saddle.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace critpd {

/// One dual block: the operator B_i, the link L_i : H -> G_i and the step Sigma_i.
struct DualBlock {
  MonotoneOp op;
  LinOp link;
  Precond sigma;
};

/// Find (x, u) with 0 in A x + sum_i L_i^* u_i and 0 in B_i^{-1} u_i - L_i x.
class PDProblem {
 public:
  PDProblem(MonotoneOp a, Precond upsilon, std::vector<DualBlock> blocks);

  const MonotoneOp& primal_op() const noexcept { return a_; }
  const Precond& upsilon() const noexcept { return upsilon_; }
  const std::vector<DualBlock>& blocks() const noexcept { return blocks_; }
  Index primal_dim() const noexcept { return upsilon_.dim(); }

  SaddleOpV saddle_operator() const;
  PDState zero_state() const;

 private:
  MonotoneOp a_;
  Precond upsilon_;
  std::vector<DualBlock> blocks_;
};

/// Tolerance on the step-size condition: estimates up to 1 + kConditionTol are
/// accepted, and |estimate - 1| <= kConditionTol counts as critical.
inline constexpr double kConditionTol = 1e-4;

struct StepCondition {
  double norm_sq_estimate = 0.0;
  bool critical = false;
  bool admissible() const noexcept { return norm_sq_estimate <= 1.0 + kConditionTol; }
};

/// Power-iteration estimate of sum_i ||sqrt(Sigma_i) L_i sqrt(Upsilon)||^2,
/// i.e. the top eigenvalue of sqrt(Upsilon) (sum_i L_i^* Sigma_i L_i) sqrt(Upsilon).
StepCondition step_condition(const PDProblem& p, std::uint64_t seed = 42);
StepCondition classify_condition(double norm_sq_estimate);

/// J_W(x, u) = (p, q) with
///   p   = J_{Upsilon A}(x - Upsilon sum_i L_i^* u_i),
///   q_i = J_{Sigma_i B_i^{-1}}(u_i + Sigma_i L_i (2p - x)).
/// p is computed once and shared by all dual blocks.
PDState resolvent_W(const PDProblem& p, const PDState& z);

/// ||J_W z - z||_V. Zero exactly when J_W z is a primal-dual solution.
double zero_inclusion_residual(const PDProblem& p, const PDState& z);

FixedPointMap primal_dual_map(const PDProblem& p);

struct PDOptions {
  KMOptions km;
  /// Skip the step-size check failure (a warning is recorded instead).
  bool allow_condition_violation = false;
  /// Use this value instead of running power iteration.
  std::optional<double> known_condition;
  std::uint64_t seed = 42;
};

struct PDResult {
  KMResult run;
  StepCondition condition;
};

/// Relaxed primal-dual iteration: km_iterate with S = J_W.
/// Throws StepConditionError when the condition fails without the override.
PDResult pd_iterate(const PDProblem& p, PDState z0, const RelaxationSchedule& schedule,
                    const PDOptions& options);

}  // namespace critpd
