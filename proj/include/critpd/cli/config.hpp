#pragma once

#include "critpd/hvector.hpp"
#include "critpd/tv/sweep.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace critpd::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProblemKind { tv, scalar };
enum class StepRule { boundary, condat, explicit_sigmas };

struct ProblemSection {
  ProblemKind kind = ProblemKind::tv;
  // tv
  Index n1 = 32;
  Index n2 = 32;
  double peak = 1.0;
  std::optional<std::filesystem::path> image;
  double alpha = 0.01;
  Index blur_size = 9;
  double blur_std = 4.0;
  double noise_std = 1e-3;
  // scalar: A x = slope x - offset, B = Id, L = link_scale Id
  Index dim = 1;
  double slope = 1.0;
  double offset = 1.0;
  double link_scale = 1.0;
};

struct SolverSection {
  double tau = 0.2;
  StepRule steps = StepRule::boundary;
  double gamma1 = 0.6;
  double gamma2 = 0.01;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double sigma3 = 0.0;
  double lambda = 1.0;
  double eps = 1e-8;
  std::size_t max_iter = 20000;
  std::uint64_t seed = 1;
};

struct OutputSection {
  std::filesystem::path out_dir = "out";
  bool timing = false;
};

struct SweepSection {
  tv::SweepGrid grid;
  std::vector<std::uint64_t> seeds{1};
  /// Falls back to kWorkersEnv, then to the hardware concurrency.
  std::optional<unsigned> workers;
};

struct DiagnoseSection {
  Index max_dense_dim = 1024;
};

/// Sections: [problem], [solver], [output], [sweep], [diagnose]. Unknown
/// sections or keys are rejected; relative paths resolve against the config's directory.
struct RunConfig {
  ProblemSection problem;
  SolverSection solver;
  OutputSection output;
  SweepSection sweep;
  DiagnoseSection diagnose;
};

/// Command-line overrides applied after loading.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> eps;
  std::optional<double> lambda;
  std::optional<std::size_t> max_iter;
  std::optional<std::filesystem::path> out_dir;
  std::optional<unsigned> workers;
};

RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);
void apply_overrides(RunConfig& cfg, const Overrides& o);

/// Name of the environment variable holding the default sweep worker count.
inline constexpr const char* kWorkersEnv = "CRITPD_WORKERS";
/// Value of kWorkersEnv, if set to a valid count.
std::optional<unsigned> workers_from_env();

}  // namespace critpd::cli
