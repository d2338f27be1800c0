#pragma once

#include "critpd/cli/config.hpp"
#include "critpd/drs.hpp"
#include "critpd/tv/sweep.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace critpd::cli {

/// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNotConverged = 2;

/// Instance described by [problem]: the PGM image when given, else the synthetic scene.
tv::InstanceSpec instance_spec(const RunConfig& cfg);
tv::TVConfig tv_config(const RunConfig& cfg, const tv::DifferenceNorms& d);

/// Writes restored.pgm, observed.pgm and trace.csv into out_dir and prints one
/// summary line. 0 on convergence, 2 when max_iter was reached.
int cmd_solve_tv(const RunConfig& cfg, std::ostream& out);

/// Writes sweep.csv into out_dir. 0 unless every row failed to converge.
int cmd_sweep(const RunConfig& cfg, std::ostream& out);

struct DrsCheckOptions {
  Index dims = 16;
  std::uint64_t seed = 1;
  std::size_t iters = 100;
  /// constant | alternating | random
  std::string schedule = "constant";
  double lambda = 1.0;
  bool zero_ops = false;
};

struct DrsInstance {
  DRSProblem problem;
  HVector x0;
  HVector u0;
};

/// A x = s x - c (s >= 0), B = d(alpha ||.||_1), diagonal Upsilon in [0.5, 2].
/// With zero_ops: A = B = 0 and Upsilon = Id.
DrsInstance random_drs_instance(Index dims, std::uint64_t seed, bool zero_ops);
RelaxationSchedule drs_schedule(const DrsCheckOptions& o);

/// max_n max_k |z_n^{PD}[k] - z_n^{DRS}[k]| over n = 0..iters, where
/// z^{PD} = x - Upsilon u along the primal-dual iteration with L = Id, Sigma = Upsilon^{-1}.
double drs_max_deviation(const DrsInstance& inst, const RelaxationSchedule& schedule, std::size_t iters);

inline constexpr double kDrsCheckTol = 1e-10;

/// 0 iff the deviation is at most kDrsCheckTol.
int cmd_drs_check(const DrsCheckOptions& o, std::ostream& out);

/// Step-size estimate, criticality and, below [diagnose] max_dense_dim, the rank,
/// smallest nonzero eigenvalue and kernel dimension of V.
int cmd_diagnose(const RunConfig& cfg, std::ostream& out);

}  // namespace critpd::cli
