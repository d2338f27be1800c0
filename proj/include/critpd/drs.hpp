#pragma once

#include "critpd/km.hpp"
#include "critpd/monotone.hpp"
#include "critpd/precond.hpp"
#include "critpd/primal_dual.hpp"

#include <vector>

namespace critpd {

/// Find x with 0 in A x + B x, with metric Upsilon (the L = Id case).
class DRSProblem {
 public:
  DRSProblem(MonotoneOp a, MonotoneOp b, Precond upsilon);

  const MonotoneOp& a() const noexcept { return a_; }
  const MonotoneOp& b() const noexcept { return b_; }
  const Precond& upsilon() const noexcept { return upsilon_; }
  Index dim() const noexcept { return upsilon_.dim(); }

  /// The primal-dual problem with L = Id and Sigma = Upsilon^{-1}.
  PDProblem as_primal_dual() const;

 private:
  MonotoneOp a_;
  MonotoneOp b_;
  Precond upsilon_;
};

/// G(z) = J_{Upsilon B}(2 J_{Upsilon A} z - z) + z - J_{Upsilon A} z.
HVector drs_operator(const DRSProblem& p, const HVector& z);

/// Lambda(x, u) = x - Upsilon u.
HVector lambda_map(const DRSProblem& p, const PDState& z);

/// Classic relaxed DRS on z. The iterate is the primal block of the result.
KMResult drs_iterate(const DRSProblem& p, const HVector& z0, const RelaxationSchedule& schedule,
                     const KMOptions& options);

struct PDDRSResult {
  KMResult run;
  /// z_n = x_n - Upsilon u_n for every iterate, including the initial one.
  std::vector<HVector> z_sequence;
};

/// Primal-dual recurrence with L = Id, Sigma = Upsilon^{-1}.
PDDRSResult pd_drs_iterate(const DRSProblem& p, const HVector& x0, const HVector& u0,
                           const RelaxationSchedule& schedule, const KMOptions& options);

/// (x, u) = ((Id + Upsilon^2)^{-1} z, -Upsilon (Id + Upsilon^2)^{-1} z), which maps a
/// fixed point of G to a fixed point of P_{ran V} J_W. Throws DomainError if
/// ||G z - z|| > tol (1 + ||z||).
PDState fixed_point_transport(const DRSProblem& p, const HVector& z_hat, double tol = 1e-8);

}  // namespace critpd
