#include "critpd/cli/commands.hpp"

#include "critpd/errors.hpp"
#include "critpd/range_diagnostics.hpp"
#include "critpd/tv/io.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

namespace critpd::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw ConfigError(fmt::format("cannot write {}", (dir / name).string()));
  return f;
}

void require_tv(const RunConfig& cfg, const char* command) {
  if (cfg.problem.kind != ProblemKind::tv) throw ConfigError(fmt::format("{} requires problem.kind = tv", command));
}

PDProblem scalar_problem(const RunConfig& cfg) {
  const ProblemSection& p = cfg.problem;
  const Index n = p.dim;
  const double sigma = cfg.solver.sigma1 > 0.0 ? cfg.solver.sigma1 : 1.0;
  std::vector<DualBlock> blocks;
  blocks.push_back(DualBlock{MonotoneOp::affine(1.0, HVector::zeros({n})), LinOp::scaled_identity(n, p.link_scale),
                             Precond::scalar(n, sigma)});
  return PDProblem(MonotoneOp::affine(p.slope, HVector::constant({n}, p.offset)), Precond::scalar(n, cfg.solver.tau),
                   std::move(blocks));
}

}  // namespace

tv::InstanceSpec instance_spec(const RunConfig& cfg) {
  const ProblemSection& p = cfg.problem;
  tv::InstanceSpec spec;
  spec.n1 = p.n1;
  spec.n2 = p.n2;
  spec.peak = p.peak;
  spec.blur_size = p.blur_size;
  spec.blur_std = p.blur_std;
  spec.noise_std = p.noise_std;
  if (p.image) spec.truth = tv::read_pgm(*p.image, p.peak);
  return spec;
}

tv::TVConfig tv_config(const RunConfig& cfg, const tv::DifferenceNorms& d) {
  const SolverSection& s = cfg.solver;
  tv::TVConfig out;
  switch (s.steps) {
    case StepRule::boundary:
      out.steps = tv::boundary_steps(s.tau, s.gamma1, s.gamma2, d);
      break;
    case StepRule::condat:
      out.steps = tv::condat_steps(s.tau, d);
      break;
    case StepRule::explicit_sigmas:
      out.steps = tv::StepSizes{s.tau, s.sigma1, s.sigma2, s.sigma3};
      break;
  }
  out.alpha = cfg.problem.alpha;
  out.lambda = s.lambda;
  out.eps = s.eps;
  out.max_iter = s.max_iter;
  tv::validate(out, d);
  return out;
}

int cmd_solve_tv(const RunConfig& cfg, std::ostream& out) {
  require_tv(cfg, "solve-tv");
  const tv::Instance inst = tv::make_instance(instance_spec(cfg), cfg.solver.seed);
  const tv::TVConfig tvc = tv_config(cfg, tv::difference_norms(inst.truth.rows(), inst.truth.cols()));

  const tv::TVResult r = tv::run_algorithm1(tvc, inst.observed, *inst.blur);

  fs::create_directories(cfg.output.out_dir);
  tv::write_pgm(cfg.output.out_dir / "restored.pgm", r.restored);
  tv::write_pgm(cfg.output.out_dir / "observed.pgm", inst.observed);
  std::ofstream trace = open_output(cfg.output.out_dir, "trace.csv");
  tv::write_trace_csv(trace, r.trace, cfg.output.timing);

  fmt::print(out, "iterations={} converged={} final_residual={} objective={} psnr={} observed_psnr={}\n",
             r.iterations, r.converged, r.final_residual, r.objective, tv::psnr(r.restored, inst.truth),
             tv::psnr(inst.observed, inst.truth));
  for (const auto& w : r.warnings) fmt::print(out, "warning: {}\n", w);
  return r.converged ? kExitOk : kExitNotConverged;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  require_tv(cfg, "sweep");
  tv::SweepOptions opts;
  opts.alpha = cfg.problem.alpha;
  opts.eps = cfg.solver.eps;
  opts.max_iter = cfg.solver.max_iter;
  opts.workers = cfg.sweep.workers.value_or(workers_from_env().value_or(0));

  const std::vector<tv::SweepRow> rows = tv::sweep(cfg.sweep.grid, instance_spec(cfg), cfg.sweep.seeds, opts);
  std::ofstream csv = open_output(cfg.output.out_dir, "sweep.csv");
  tv::write_sweep_csv(csv, rows);

  std::size_t converged = 0;
  for (const auto& r : rows) {
    if (r.converged) ++converged;
    if (!r.error.empty()) fmt::print(out, "cell tau={} lambda={} seed={} failed: {}\n", r.cell.steps.tau, r.cell.lambda, r.seed, r.error);
  }
  fmt::print(out, "rows={} converged={} csv={}\n", rows.size(), converged, (cfg.output.out_dir / "sweep.csv").string());
  return (rows.empty() || converged > 0) ? kExitOk : kExitNotConverged;
}

DrsInstance random_drs_instance(Index dims, std::uint64_t seed, bool zero_ops) {
  if (dims < 1) throw DomainError("random_drs_instance: dims must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto random_vector = [&] {
    HVector v(dims);
    for (Index k = 0; k < dims; ++k) v[k] = unit(rng);
    return v;
  };
  HVector x0 = random_vector();
  HVector u0 = random_vector();
  if (zero_ops) {
    return DrsInstance{DRSProblem(MonotoneOp::zero(dims), MonotoneOp::zero(dims), Precond::scalar(dims, 1.0)),
                       std::move(x0), std::move(u0)};
  }
  std::uniform_real_distribution<double> slope(0.0, 2.0);
  std::uniform_real_distribution<double> step(0.5, 2.0);
  std::uniform_real_distribution<double> weight(0.05, 0.5);
  const double s = slope(rng);
  HVector c = random_vector();
  Eigen::VectorXd diag(dims);
  for (Index k = 0; k < dims; ++k) diag[k] = step(rng);
  const double alpha = weight(rng);
  return DrsInstance{DRSProblem(MonotoneOp::affine(s, std::move(c)), MonotoneOp::l1_subdifferential(dims, alpha),
                                Precond::diagonal(std::move(diag))),
                     std::move(x0), std::move(u0)};
}

RelaxationSchedule drs_schedule(const DrsCheckOptions& o) {
  if (o.schedule == "constant") return RelaxationSchedule::constant(o.lambda);
  if (o.schedule == "alternating") return RelaxationSchedule::sequence({0.5, 1.9});
  if (o.schedule == "random") {
    std::mt19937_64 rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> lam(0.0, 2.0);
    std::vector<double> values(std::max<std::size_t>(o.iters, 1));
    for (double& v : values) v = lam(rng);
    return RelaxationSchedule::sequence(std::move(values));
  }
  throw ConfigError(fmt::format("drs-check: unknown schedule '{}'", o.schedule));
}

double drs_max_deviation(const DrsInstance& inst, const RelaxationSchedule& schedule, std::size_t iters) {
  KMOptions opts;
  opts.eps = 0.0;
  opts.max_iter = iters;
  opts.divergence_floor = 0.0;

  const PDDRSResult pd = pd_drs_iterate(inst.problem, inst.x0, inst.u0, schedule, opts);

  StateRecorder recorder;
  KMOptions drs_opts = opts;
  drs_opts.monitors.push_back(&recorder);
  const HVector z0 = lambda_map(inst.problem, PDState(inst.x0, {inst.u0}));
  drs_iterate(inst.problem, z0, schedule, drs_opts);

  const auto& classic = recorder.states();
  if (classic.size() != pd.z_sequence.size()) {
    throw DimensionError(fmt::format("drs_max_deviation: sequence lengths differ ({} vs {})", classic.size(),
                                     pd.z_sequence.size()));
  }
  double worst = 0.0;
  for (std::size_t n = 0; n < classic.size(); ++n) {
    worst = std::max(worst, (classic[n].primal.values() - pd.z_sequence[n].values()).cwiseAbs().maxCoeff());
  }
  return worst;
}

int cmd_drs_check(const DrsCheckOptions& o, std::ostream& out) {
  const DrsInstance inst = random_drs_instance(o.dims, o.seed, o.zero_ops);
  const double dev = drs_max_deviation(inst, drs_schedule(o), o.iters);
  fmt::print(out, "dims={} seed={} iters={} schedule={} max_deviation={}\n", o.dims, o.seed, o.iters, o.schedule, dev);
  return dev <= kDrsCheckTol ? kExitOk : kExitNotConverged;
}

int cmd_diagnose(const RunConfig& cfg, std::ostream& out) {
  std::optional<PDProblem> problem;
  if (cfg.problem.kind == ProblemKind::scalar) {
    problem.emplace(scalar_problem(cfg));
  } else {
    const tv::Instance inst = tv::make_instance(instance_spec(cfg), cfg.solver.seed);
    const tv::TVConfig tvc = tv_config(cfg, tv::difference_norms(inst.truth.rows(), inst.truth.cols()));
    problem.emplace(tv::build_tv_problem(tvc, inst.observed, *inst.blur));
  }
  const StepCondition c = step_condition(*problem, cfg.solver.seed);
  fmt::print(out, "estimate: {}\n", c.norm_sq_estimate);
  fmt::print(out, "critical: {}\n", c.critical);
  fmt::print(out, "admissible: {}\n", c.admissible());

  const SaddleOpV v = problem->saddle_operator();
  if (v.total_dim() > cfg.diagnose.max_dense_dim) {
    fmt::print(out, "rank: skipped (dense limit)\n");
    fmt::print(out, "total_dim: {} max_dense_dim: {}\n", v.total_dim(), cfg.diagnose.max_dense_dim);
    return kExitOk;
  }
  const RangeDiagnostics diag = dense_range_diagnostics(v, cfg.diagnose.max_dense_dim);
  fmt::print(out, "rank: {}\n", diag.rank());
  fmt::print(out, "alpha: {}\n", diag.min_nonzero_eig());
  fmt::print(out, "kernel_dim: {}\n", diag.kernel_dim());
  return kExitOk;
}

}  // namespace critpd::cli
