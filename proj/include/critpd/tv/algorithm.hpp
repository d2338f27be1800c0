#pragma once

#include "critpd/convolution.hpp"
#include "critpd/km.hpp"
#include "critpd/primal_dual.hpp"
#include "critpd/tv/image.hpp"
#include "critpd/tv/operators.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace critpd::tv {

struct StepSizes {
  double tau = 0.0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double sigma3 = 0.0;
};

/// Squared norms of the two difference operators on an n1 x n2 grid.
struct DifferenceNorms {
  double d1_sq;
  double d2_sq;
};
DifferenceNorms difference_norms(Index n1, Index n2);

/// tau (sigma1 ||D1||^2 + sigma2 ||D2||^2 + sigma3).
double boundary_value(const StepSizes& s, const DifferenceNorms& d);

/// Step sizes on the boundary tau (sigma1 ||D1||^2 + sigma2 ||D2||^2 + sigma3) = 1:
///   sigma1 = g1 (1 - g2) / (tau ||D1||^2), sigma2 = (1 - g1)(1 - g2) / (tau ||D2||^2),
///   sigma3 = g2 / tau,  with g1, g2 in (0, 1).
StepSizes boundary_steps(double tau, double gamma1, double gamma2, const DifferenceNorms& d);

/// Shared dual step sigma = 1 / (tau (1 + ||D1||^2 + ||D2||^2)), also on the boundary.
StepSizes condat_steps(double tau, const DifferenceNorms& d);

/// Inverse of boundary_steps for a boundary point; used to label sweep rows.
std::pair<double, double> boundary_gammas(const StepSizes& s, const DifferenceNorms& d);

struct TVConfig {
  StepSizes steps{0.2, 0.0, 0.0, 0.0};
  double alpha = 0.01;
  double lambda = 1.0;
  double eps = 1e-8;
  std::size_t max_iter = 20000;
  bool record_objective = true;
};

/// Throws DomainError for nonpositive steps, lambda outside (0, 2), alpha < 0,
/// or eps <= 0; StepConditionError when the boundary value exceeds 1 + kConditionTol.
void validate(const TVConfig& cfg, const DifferenceNorms& d);

/// min_x 1/2 ||R x - b||^2 + alpha ||D1 x||_1 + alpha ||D2 x||_1 + i_[0, peak](x).
double tv_objective(const ImageGrid& x, const LinOp& r, const HVector& b, double alpha);

/// The relaxed primal-dual problem for the TV instance: A = grad f (FFT
/// resolvent), B1 = B2 = d(alpha ||.||_1) on D1, D2, B3 = box normal cone on Id.
PDProblem build_tv_problem(const TVConfig& cfg, const ImageGrid& observed, const PeriodicConvolution& blur);

struct TVRunOptions {
  std::vector<Monitor*> monitors;
  /// Defaults to (b, 0, 0, 0).
  std::optional<PDState> initial;
};

struct TVResult {
  /// Primal part of J_W at the last iterate (feasible for the box).
  ImageGrid restored;
  ImageGrid last_iterate;
  PDState state;
  std::vector<IterTrace> trace;
  std::vector<std::string> warnings;
  bool converged = false;
  std::size_t iterations = 0;
  double condition = 0.0;
  double final_residual = 0.0;
  double objective = 0.0;
};

TVResult run_algorithm1(const TVConfig& cfg, const ImageGrid& observed, const PeriodicConvolution& blur,
                        const TVRunOptions& options = {});

}  // namespace critpd::tv
