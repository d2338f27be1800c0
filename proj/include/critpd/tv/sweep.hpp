#pragma once

#include "critpd/tv/algorithm.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace critpd::tv {

/// Synthetic deblurring instance: ground truth, blur and noise level.
struct InstanceSpec {
  Index n1 = 64;
  Index n2 = 64;
  double peak = 1.0;
  Index blur_size = 9;
  double blur_std = 4.0;
  double noise_std = 1e-3;
  /// Ground truth; the synthetic scene when empty.
  std::optional<ImageGrid> truth;
};

struct Instance {
  ImageGrid truth;
  ImageGrid observed;
  std::shared_ptr<const PeriodicConvolution> blur;
};

/// b = R truth + noise(seed).
Instance make_instance(const InstanceSpec& spec, std::uint64_t seed);

/// Cartesian grid of boundary step sizes. Gamma values may be given in either
/// order (see SweepGrid::swap_gammas); `include_condat` adds the shared-sigma
/// cell for every tau and lambda.
struct SweepGrid {
  std::vector<double> taus{0.2};
  std::vector<double> gamma1{0.6};
  std::vector<double> gamma2{0.01};
  std::vector<double> lambdas{1.0};
  bool include_condat = true;
  /// Treat gamma1 as the sigma3 share and gamma2 as the D1 share.
  bool swap_gammas = false;
};

struct SweepCell {
  StepSizes steps;
  double lambda = 1.0;
  bool condat = false;
};

std::vector<SweepCell> expand_grid(const SweepGrid& grid, const DifferenceNorms& d);

struct SweepOptions {
  double alpha = 0.01;
  double eps = 1e-8;
  std::size_t max_iter = 20000;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned workers = 1;
  bool keep_traces = false;
};

struct SweepRow {
  SweepCell cell;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  bool converged = false;
  double final_residual = 0.0;
  double objective = 0.0;
  double psnr = 0.0;
  double wall_ms = 0.0;
  std::string error;
  std::vector<IterTrace> trace;
};

/// Runs every cell for every seed. Rows are ordered by (seed, cell) regardless
/// of the worker count; a failing cell is reported in its row and the sweep continues.
std::vector<SweepRow> sweep(const SweepGrid& grid, const InstanceSpec& spec, const std::vector<std::uint64_t>& seeds,
                            const SweepOptions& options);

TVConfig cell_config(const SweepCell& cell, const SweepOptions& options);

}  // namespace critpd::tv
