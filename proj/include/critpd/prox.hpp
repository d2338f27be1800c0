#pragma once

#include "critpd/hvector.hpp"

#include <functional>

namespace critpd {

/// prox of kappa*g evaluated at a point: (kappa, v) -> prox_{kappa g}(v).
using ProxFn = std::function<HVector(double kappa, const HVector& v)>;

/// Componentwise soft thresholding sign(x_j) max(|x_j| - kappa, 0).
HVector prox_l1(const HVector& x, double kappa);

/// Componentwise clamp to [lo, hi].
HVector project_box(const HVector& x, double lo, double hi);

/// Resolvent of sigma (dg)^{-1} obtained from the prox of g:
///   sigma (u/sigma - prox_{g/sigma}(u/sigma)).
HVector moreau_inverse_resolvent(const ProxFn& prox_g, double sigma, const HVector& u);

}  // namespace critpd
