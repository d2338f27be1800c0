#include "critpd/cli/commands.hpp"
#include "critpd/cli/config.hpp"
#include "critpd/errors.hpp"
#include "critpd/runtime.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <functional>
#include <iostream>

namespace {

using namespace critpd::cli;

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
  } catch (const critpd::StepConditionError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
  }
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  critpd::tune_allocator();
  CLI::App app{"Relaxed primal-dual splitting with critical preconditioners"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;
  auto add_config_flags = [&](CLI::App* cmd, bool with_workers) {
    cmd->add_option("--config", config_path, "INI configuration file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seed", overrides.seed, "Noise / RNG seed");
    cmd->add_option("--eps", overrides.eps, "Stopping tolerance on the relative residual");
    cmd->add_option("--lambda", overrides.lambda, "Relaxation parameter");
    cmd->add_option("--max-iter", overrides.max_iter, "Iteration cap");
    cmd->add_option("--out-dir", overrides.out_dir, "Output directory");
    if (with_workers) {
      cmd->add_option("--workers", overrides.workers,
                      fmt::format("Sweep worker threads (0 = hardware); default from [sweep] workers, then {}", kWorkersEnv));
    }
  };

  CLI::App* solve = app.add_subcommand("solve-tv", "Run the TV deblurring experiment once");
  add_config_flags(solve, false);
  CLI::App* sweep = app.add_subcommand("sweep", "Run a grid of step sizes and relaxation parameters");
  add_config_flags(sweep, true);
  CLI::App* diagnose = app.add_subcommand("diagnose", "Report the step-size condition and range of V");
  add_config_flags(diagnose, false);

  DrsCheckOptions drs;
  CLI::App* drs_cmd = app.add_subcommand("drs-check", "Compare the primal-dual DRS sequence with classic DRS");
  drs_cmd->add_option("--dims", drs.dims, "Dimension of the random instance")->check(CLI::PositiveNumber);
  drs_cmd->add_option("--seed", drs.seed, "Instance seed");
  drs_cmd->add_option("--iters", drs.iters, "Number of iterations");
  drs_cmd->add_option("--schedule", drs.schedule, "constant | alternating | random")
      ->check(CLI::IsMember({"constant", "alternating", "random"}));
  drs_cmd->add_option("--lambda", drs.lambda, "Relaxation for the constant schedule")->check(CLI::Range(0.0, 2.0));
  drs_cmd->add_flag("--zero-ops", drs.zero_ops, "Use A = B = 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  auto with_config = [&](int (*command)(const RunConfig&, std::ostream&)) {
    return guarded([&] {
      RunConfig cfg = load_config(config_path);
      apply_overrides(cfg, overrides);
      return command(cfg, std::cout);
    });
  };

  if (*solve) return with_config(&cmd_solve_tv);
  if (*sweep) return with_config(&cmd_sweep);
  if (*diagnose) return with_config(&cmd_diagnose);
  if (*drs_cmd) return guarded([&] { return cmd_drs_check(drs, std::cout); });
  return kExitConfig;
}
