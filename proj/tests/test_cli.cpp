#include "critpd/cli/commands.hpp"
#include "critpd/cli/config.hpp"
#include "critpd/errors.hpp"

#include <doctest.h>
#include <fmt/format.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace critpd;
using namespace critpd::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kBase = "/cfg/base";

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "critpd_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Run {
  int code;
  std::string out;
};

Run run_binary(const std::string& args) {
  const std::string cmd = fmt::format("{} {} 2>&1", CRITPD_BIN, args);
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

const char* kTinyTv = R"(
[problem]
n1 = 8
n2 = 8
blur_size = 3
blur_std = 1
noise_std = 0.01
[solver]
tau = 0.2
steps = boundary
gamma1 = 0.5
gamma2 = 0.1
eps = 1e-6
max_iter = 20000
[output]
out_dir = out
)";

}  // namespace

TEST_CASE("empty config gives the defaults") {
  const RunConfig cfg = parse_config("", kBase);
  CHECK(cfg.problem.kind == ProblemKind::tv);
  CHECK(cfg.problem.n1 == 32);
  CHECK(cfg.solver.steps == StepRule::boundary);
  CHECK(cfg.solver.tau == 0.2);
  CHECK(cfg.solver.lambda == 1.0);
  CHECK(cfg.output.out_dir == kBase / "out");
  CHECK(cfg.sweep.seeds == std::vector<std::uint64_t>{1});
  CHECK_FALSE(cfg.sweep.workers.has_value());
  CHECK(cfg.diagnose.max_dense_dim == 1024);
}

TEST_CASE("config values are parsed") {
  const RunConfig cfg = parse_config(R"(
; comment
[problem]
kind = scalar
dim = 3
slope = 0.5
image = ../img/x.pgm
[solver]
steps = explicit
sigma1 = 0.25
lambda = 1.5
max_iter = 77
seed = 9
[output]
out_dir = /abs/out
timing = true
[sweep]
taus = 0.1, 0.2
gamma1 = 0.3,0.6
gamma2 = 0.01
lambdas = 1, 1.9
seeds = 1, 2, 3
include_condat = false
gamma_order = swapped
workers = 2
[diagnose]
max_dense_dim = 10
)",
                                     kBase);
  CHECK(cfg.problem.kind == ProblemKind::scalar);
  CHECK(cfg.problem.dim == 3);
  CHECK(cfg.problem.slope == 0.5);
  CHECK(*cfg.problem.image == fs::path("/cfg/img/x.pgm"));
  CHECK(cfg.solver.steps == StepRule::explicit_sigmas);
  CHECK(cfg.solver.sigma1 == 0.25);
  CHECK(cfg.solver.lambda == 1.5);
  CHECK(cfg.solver.max_iter == 77);
  CHECK(cfg.solver.seed == 9);
  CHECK(cfg.output.out_dir == fs::path("/abs/out"));
  CHECK(cfg.output.timing);
  CHECK(cfg.sweep.grid.taus == std::vector<double>{0.1, 0.2});
  CHECK(cfg.sweep.grid.gamma1 == std::vector<double>{0.3, 0.6});
  CHECK(cfg.sweep.grid.lambdas == std::vector<double>{1.0, 1.9});
  CHECK(cfg.sweep.seeds == std::vector<std::uint64_t>{1, 2, 3});
  CHECK_FALSE(cfg.sweep.grid.include_condat);
  CHECK(cfg.sweep.grid.swap_gammas);
  CHECK(*cfg.sweep.workers == 2);
  CHECK(cfg.diagnose.max_dense_dim == 10);
}

TEST_CASE("malformed configs are rejected") {
  for (const char* text : {
           "[bogus]\nx = 1\n",
           "[solver]\ntua = 0.2\n",
           "[solver]\ntau = abc\n",
           "[solver]\ntau = 0.2x\n",
           "[solver]\nsteps = fancy\n",
           "[solver]\nmax_iter = -3\n",
           "[problem]\nkind = cubic\n",
           "[sweep]\nseeds =\n",
           "[sweep]\ngamma_order = sideways\n",
           "stray = 1\n",
           "[solver\ntau = 1\n",
       }) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_config(text, kBase), ConfigError);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/critpd.ini"), ConfigError);
}

TEST_CASE("overrides") {
  RunConfig cfg = parse_config("[sweep]\nlambdas = 1, 1.9\nseeds = 4, 5\n", kBase);
  Overrides o;
  o.seed = 7;
  o.eps = 1e-3;
  o.lambda = 1.2;
  o.max_iter = 11;
  o.out_dir = "rel";
  o.workers = 3;
  apply_overrides(cfg, o);
  CHECK(cfg.solver.seed == 7);
  CHECK(cfg.sweep.seeds == std::vector<std::uint64_t>{7});
  CHECK(cfg.solver.eps == 1e-3);
  CHECK(cfg.sweep.grid.lambdas == std::vector<double>{1.2});
  CHECK(cfg.solver.max_iter == 11);
  CHECK(cfg.output.out_dir == fs::current_path() / "rel");
  CHECK(*cfg.sweep.workers == 3);
}

TEST_CASE("worker count from the environment") {
  ::unsetenv(kWorkersEnv);
  CHECK_FALSE(workers_from_env().has_value());
  ::setenv(kWorkersEnv, "4", 1);
  CHECK(*workers_from_env() == 4);
  ::setenv(kWorkersEnv, "four", 1);
  CHECK_FALSE(workers_from_env().has_value());
  ::setenv(kWorkersEnv, "-1", 1);
  CHECK_FALSE(workers_from_env().has_value());
  ::unsetenv(kWorkersEnv);
}

TEST_CASE("step rules map to TV step sizes") {
  const tv::DifferenceNorms d = tv::difference_norms(8, 8);
  RunConfig cfg = parse_config(kTinyTv, kBase);
  const tv::TVConfig boundary = tv_config(cfg, d);
  CHECK(tv::boundary_value(boundary.steps, d) == doctest::Approx(1.0));
  cfg.solver.steps = StepRule::condat;
  const tv::TVConfig condat = tv_config(cfg, d);
  CHECK(condat.steps.sigma1 == condat.steps.sigma3);
  cfg.solver.steps = StepRule::explicit_sigmas;
  cfg.solver.sigma1 = cfg.solver.sigma2 = cfg.solver.sigma3 = 10.0;
  CHECK_THROWS_AS(tv_config(cfg, d), StepConditionError);
  cfg.solver.sigma1 = cfg.solver.sigma2 = cfg.solver.sigma3 = 0.1;
  CHECK(tv_config(cfg, d).steps.sigma2 == 0.1);
}

TEST_CASE("solve-tv writes outputs and reports convergence") {
  const fs::path dir = scratch_dir("solve");
  RunConfig cfg = parse_config(kTinyTv, dir);
  std::ostringstream out;
  CHECK(cmd_solve_tv(cfg, out) == kExitOk);
  CHECK(out.str().find("converged=true") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "restored.pgm"));
  CHECK(fs::exists(dir / "out" / "observed.pgm"));
  const std::string trace = slurp(dir / "out" / "trace.csv");
  CHECK(trace.rfind("n,residual,objective,v_displacement\n", 0) == 0);

  cfg.solver.max_iter = 5;
  cfg.output.out_dir = dir / "capped";
  std::ostringstream capped;
  CHECK(cmd_solve_tv(cfg, capped) == kExitNotConverged);
  const std::string lines = slurp(dir / "capped" / "trace.csv");
  CHECK(std::count(lines.begin(), lines.end(), '\n') == 6);
}

TEST_CASE("sweep writes one row per cell and seed") {
  const fs::path dir = scratch_dir("sweep");
  RunConfig cfg = parse_config(std::string(kTinyTv) + "[sweep]\ngamma1 = 0.3, 0.6\ngamma2 = 0.1\nseeds = 1, 2\n", dir);
  std::ostringstream out;
  CHECK(cmd_sweep(cfg, out) == kExitOk);
  const std::string csv = slurp(dir / "out" / "sweep.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 3);

  cfg.solver.max_iter = 3;
  CHECK(cmd_sweep(cfg, out) == kExitNotConverged);
}

TEST_CASE("diagnose output") {
  RunConfig scalar = parse_config("[problem]\nkind = scalar\n[solver]\ntau = 0.5\nsigma1 = 1\n", kBase);
  std::ostringstream out;
  CHECK(cmd_diagnose(scalar, out) == kExitOk);
  CHECK(out.str().find("critical: false") != std::string::npos);
  CHECK(out.str().find("rank: 2") != std::string::npos);
  CHECK(out.str().find("kernel_dim: 0") != std::string::npos);

  scalar.solver.sigma1 = 2.0;
  std::ostringstream crit;
  CHECK(cmd_diagnose(scalar, crit) == kExitOk);
  CHECK(crit.str().find("critical: true") != std::string::npos);
  CHECK(crit.str().find("kernel_dim: 1") != std::string::npos);

  RunConfig tv = parse_config(kTinyTv, kBase);
  tv.diagnose.max_dense_dim = 10;
  std::ostringstream big;
  CHECK(cmd_diagnose(tv, big) == kExitOk);
  CHECK(big.str().find("critical: true") != std::string::npos);
  CHECK(big.str().find("rank: skipped") != std::string::npos);
}

TEST_CASE("drs-check") {
  for (const char* schedule : {"constant", "alternating", "random"}) {
    DrsCheckOptions o;
    o.schedule = schedule;
    o.lambda = 1.7;
    std::ostringstream out;
    CHECK(cmd_drs_check(o, out) == kExitOk);
    CHECK(out.str().find("max_deviation=") != std::string::npos);
  }
  DrsCheckOptions zero;
  zero.zero_ops = true;
  const DrsInstance inst = random_drs_instance(8, 3, true);
  CHECK(drs_max_deviation(inst, drs_schedule(zero), 50) == 0.0);
  DrsCheckOptions bad;
  bad.schedule = "sometimes";
  CHECK_THROWS(drs_schedule(bad));
}

TEST_CASE("binary exit codes") {
  const fs::path dir = scratch_dir("binary");
  const fs::path cfg = write_config(dir, "tiny.ini", kTinyTv);
  const std::string flags = fmt::format("--config {} --out-dir {}", cfg.string(), (dir / "a").string());

  CHECK(run_binary("--help").code == 0);
  CHECK(run_binary("").code == kExitConfig);
  CHECK(run_binary("solve-tv").code == kExitConfig);
  CHECK(run_binary(fmt::format("solve-tv {}", flags)).code == kExitOk);
  const Run capped = run_binary(fmt::format("solve-tv {} --max-iter 5", flags));
  CHECK(capped.code == kExitNotConverged);
  CHECK(capped.out.find("iterations=5") != std::string::npos);
  CHECK(run_binary(fmt::format("solve-tv {} --lambda 2.5", flags)).code == kExitConfig);

  const fs::path bad = write_config(dir, "bad.ini", "[solver]\ntua = 1\n");
  const Run rejected = run_binary(fmt::format("solve-tv --config {}", bad.string()));
  CHECK(rejected.code == kExitConfig);
  CHECK(rejected.out.find("solver.tua") != std::string::npos);

  const fs::path viol = write_config(dir, "viol.ini", "[solver]\nsteps = explicit\nsigma1 = 1\nsigma2 = 1\nsigma3 = 1\n");
  CHECK(run_binary(fmt::format("solve-tv --config {}", viol.string())).code == kExitConfig);

  CHECK(run_binary("drs-check --dims 8 --iters 50 --schedule random").code == kExitOk);
  CHECK(run_binary("drs-check --schedule weekly").code == kExitConfig);
}

TEST_CASE("reruns are byte-identical") {
  const fs::path dir = scratch_dir("rerun");
  const fs::path cfg = write_config(dir, "tiny.ini", kTinyTv);
  for (const char* sub : {"a", "b"}) {
    REQUIRE(run_binary(fmt::format("solve-tv --config {} --out-dir {}", cfg.string(), (dir / sub).string())).code ==
            kExitOk);
  }
  for (const char* file : {"trace.csv", "restored.pgm", "observed.pgm"}) {
    CAPTURE(file);
    const std::string a = slurp(dir / "a" / file);
    CHECK_FALSE(a.empty());
    CHECK(a == slurp(dir / "b" / file));
  }
}
