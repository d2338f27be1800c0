#include "critpd/prox.hpp"

#include "critpd/errors.hpp"

#include <fmt/format.h>

namespace critpd {

HVector prox_l1(const HVector& x, double kappa) {
  if (!(kappa >= 0.0)) throw DomainError(fmt::format("prox_l1: kappa {} must be nonnegative", kappa));
  HVector out = x;
  auto& v = out.values();
  v = v.array().sign() * (v.array().abs() - kappa).max(0.0);
  return out;
}

HVector project_box(const HVector& x, double lo, double hi) {
  if (!(lo <= hi)) throw DomainError(fmt::format("project_box: lo {} exceeds hi {}", lo, hi));
  HVector out = x;
  out.values() = out.values().cwiseMax(lo).cwiseMin(hi);
  return out;
}

HVector moreau_inverse_resolvent(const ProxFn& prox_g, double sigma, const HVector& u) {
  if (!(sigma > 0.0)) throw DomainError(fmt::format("moreau_inverse_resolvent: sigma {} must be positive", sigma));
  const HVector scaled = (1.0 / sigma) * u;
  return sigma * (scaled - prox_g(1.0 / sigma, scaled));
}

}  // namespace critpd
