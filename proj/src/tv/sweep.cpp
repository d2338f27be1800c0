#include "critpd/tv/sweep.hpp"

#include "critpd/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

namespace critpd::tv {

Instance make_instance(const InstanceSpec& spec, std::uint64_t seed) {
  ImageGrid truth = spec.truth ? *spec.truth : make_synthetic_image(spec.n1, spec.n2, spec.peak);
  auto blur = std::make_shared<const PeriodicConvolution>(
      build_gaussian_blur(truth.rows(), truth.cols(), spec.blur_size, spec.blur_std));
  ImageGrid blurred(blur->apply(truth.pixels()), truth.peak());
  ImageGrid observed = add_gaussian_noise(blurred, spec.noise_std, seed);
  return Instance{std::move(truth), std::move(observed), std::move(blur)};
}

std::vector<SweepCell> expand_grid(const SweepGrid& grid, const DifferenceNorms& d) {
  std::vector<SweepCell> cells;
  for (double tau : grid.taus) {
    for (double lambda : grid.lambdas) {
      if (grid.include_condat) cells.push_back(SweepCell{condat_steps(tau, d), lambda, true});
      for (double g1 : grid.gamma1) {
        for (double g2 : grid.gamma2) {
          const StepSizes s = grid.swap_gammas ? boundary_steps(tau, g2, g1, d) : boundary_steps(tau, g1, g2, d);
          cells.push_back(SweepCell{s, lambda, false});
        }
      }
    }
  }
  return cells;
}

TVConfig cell_config(const SweepCell& cell, const SweepOptions& options) {
  TVConfig cfg;
  cfg.steps = cell.steps;
  cfg.lambda = cell.lambda;
  cfg.alpha = options.alpha;
  cfg.eps = options.eps;
  cfg.max_iter = options.max_iter;
  return cfg;
}

std::vector<SweepRow> sweep(const SweepGrid& grid, const InstanceSpec& spec, const std::vector<std::uint64_t>& seeds,
                            const SweepOptions& options) {
  std::vector<Instance> instances;
  instances.reserve(seeds.size());
  for (std::uint64_t seed : seeds) instances.push_back(make_instance(spec, seed));
  if (instances.empty()) return {};

  const Instance& first = instances.front();
  const std::vector<SweepCell> cells = expand_grid(grid, difference_norms(first.truth.rows(), first.truth.cols()));
  const std::size_t total = cells.size() * seeds.size();
  std::vector<SweepRow> rows(total);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const std::size_t s = k / cells.size();
      const Instance& inst = instances[s];
      SweepRow& row = rows[k];
      row.cell = cells[k % cells.size()];
      row.seed = seeds[s];
      const auto t0 = std::chrono::steady_clock::now();
      try {
        TVResult r = run_algorithm1(cell_config(row.cell, options), inst.observed, *inst.blur);
        row.iterations = r.iterations;
        row.converged = r.converged;
        row.final_residual = r.final_residual;
        row.objective = r.objective;
        row.psnr = psnr(r.restored, inst.truth);
        if (options.keep_traces) row.trace = std::move(r.trace);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };

  unsigned workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return rows;
}

}  // namespace critpd::tv
