#pragma once

#include "critpd/hvector.hpp"
#include "critpd/linop.hpp"
#include "critpd/precond.hpp"

#include <vector>

namespace critpd {

/// The self-adjoint operator on H + G_1 + ... + G_m
///
///   V(x, u) = (Upsilon^{-1} x - sum_i L_i^* u_i,  Sigma_i^{-1} u_i - L_i x).
///
/// V is monotone when sum_i ||sqrt(Sigma_i) L_i sqrt(Upsilon)||^2 <= 1 and
/// singular in the critical (equality) case; its quadratic form is then only a
/// seminorm.
class SaddleOpV {
 public:
  SaddleOpV(Precond upsilon, std::vector<Precond> sigmas, std::vector<LinOp> links);

  PDState apply(const PDState& z) const;

  const Precond& upsilon() const noexcept { return upsilon_; }
  const std::vector<Precond>& sigmas() const noexcept { return sigmas_; }
  const std::vector<LinOp>& links() const noexcept { return links_; }

  Index primal_dim() const noexcept { return upsilon_.dim(); }
  Index total_dim() const;
  /// Zero state with the block structure of the product space.
  PDState zero_state() const;
  bool accepts(const PDState& z) const;

 private:
  Precond upsilon_;
  std::vector<Precond> sigmas_;
  std::vector<LinOp> links_;
};

PDState saddle_apply(const SaddleOpV& v, const PDState& z);

/// Relative slack below zero tolerated in <Vz, z> before V is declared
/// non-monotone.
inline constexpr double kSeminormNegativeSlack = 1e-12;

/// sqrt(max(<Vz, z>, 0)). Throws NotMonotoneError when the form is below
/// -kSeminormNegativeSlack times max(||z||^2, <Upsilon^{-1}x,x> + sum <Sigma_i^{-1}u_i,u_i>).
double v_seminorm(const SaddleOpV& v, const PDState& z);

/// tau*sigma/(tau+sigma): the cocoercivity constant of V when tau and sigma are
/// the strong monotonicity constants of Upsilon and Sigma.
double cocoercivity_constant(double tau, double sigma);

}  // namespace critpd
