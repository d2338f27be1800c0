#pragma once

#include "critpd/hvector.hpp"
#include "critpd/precond.hpp"
#include "critpd/prox.hpp"
#include "critpd/quad_data_fit.hpp"

#include <memory>
#include <string>
#include <variant>

namespace critpd {

/// Maximally monotone operator, available only through its resolvent
/// J_{Upsilon A} = (Id + Upsilon A)^{-1} at a given preconditioner.
class MonotoneOp {
 public:
  enum class Family { zero, affine, l1, box, quadratic, prox };

  /// A = 0.
  static MonotoneOp zero(Index dim);
  /// A x = slope * x - offset, slope >= 0.
  static MonotoneOp affine(double slope, HVector offset);
  /// A = d(alpha ||.||_1).
  static MonotoneOp l1_subdifferential(Index dim, double alpha);
  /// A = normal cone of [lo, hi]^dim.
  static MonotoneOp box_normal_cone(Index dim, double lo, double hi);
  /// A = grad of 1/2 ||R . - b||^2.
  static MonotoneOp quadratic_data_fit(std::shared_ptr<const QuadDataFit> fit);
  /// A = dg for a user-supplied prox of g (scalar preconditioners only).
  static MonotoneOp subdifferential(Index dim, ProxFn prox_g, std::string name);

  Index dim() const noexcept { return dim_; }
  Family family() const noexcept { return family_; }
  const std::string& descriptor() const noexcept { return descriptor_; }

  HVector resolvent(const Precond& upsilon, const HVector& x) const;

  /// (kappa, v) -> J_{kappa A}(v), the prox of kappa g when A = dg.
  ProxFn scalar_resolvent() const;

 private:
  struct Zero {};
  struct Affine {
    double slope;
    HVector offset;
  };
  struct L1 {
    double alpha;
  };
  struct Box {
    double lo, hi;
  };
  struct Quadratic {
    std::shared_ptr<const QuadDataFit> fit;
  };
  struct Prox {
    ProxFn prox;
  };
  using Payload = std::variant<Zero, Affine, L1, Box, Quadratic, Prox>;

  MonotoneOp(Index dim, Family family, std::string descriptor, Payload payload);

  Index dim_;
  Family family_;
  std::string descriptor_;
  Payload payload_;
};

/// J_{Upsilon A}(x), dispatched on the operator family.
HVector resolvent_generic(const MonotoneOp& op, const Precond& upsilon, const HVector& x);

/// J_{Sigma B^{-1}}(w) = w - Sigma J_{Sigma^{-1} B}(Sigma^{-1} w). For scalar
/// Sigma this goes through moreau_inverse_resolvent with the prox of B.
HVector resolvent_inverse(const MonotoneOp& b, const Precond& sigma, const HVector& w);

}  // namespace critpd
