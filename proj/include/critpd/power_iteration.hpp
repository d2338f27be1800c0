#pragma once

#include "critpd/linop.hpp"

#include <cstdint>

namespace critpd {

struct PowerIterationOptions {
  double tol = 1e-9;
  int max_iter = 200000;
  std::uint64_t seed = 42;
};

/// Largest eigenvalue of a self-adjoint positive semidefinite operator (for
/// example normal_operator(A), giving ||A||^2).
///
/// Starts from a seeded uniform vector, renormalizes every step and stops when
/// successive Rayleigh quotients differ by at most tol relative. The estimate
/// approaches the top eigenvalue from below. Throws PowerIterationError after
/// max_iter steps.
double power_iteration_sqnorm(const LinOp& op, const PowerIterationOptions& options = {});

}  // namespace critpd
