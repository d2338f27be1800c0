#include "critpd/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace critpd::cli {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"problem",
       {"kind", "n1", "n2", "peak", "image", "alpha", "blur_size", "blur_std", "noise_std", "dim", "slope", "offset",
        "link_scale"}},
      {"solver", {"tau", "steps", "gamma1", "gamma2", "sigma1", "sigma2", "sigma3", "lambda", "eps", "max_iter", "seed"}},
      {"output", {"out_dir", "timing"}},
      {"sweep", {"taus", "gamma1", "gamma2", "lambdas", "seeds", "include_condat", "gamma_order", "workers"}},
      {"diagnose", {"max_dense_dim"}},
  };
  return keys;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::string key_name(const std::string& section, const std::string& key) { return section + "." + key; }

double to_real(const std::string& section, const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(fmt::format("{}: expected a number, got '{}'", key_name(section, key), raw));
}

long long to_integer(const std::string& section, const std::string& key, const std::string& raw, long long lo) {
  const std::string s = trim(raw);
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size() && v >= lo) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(fmt::format("{}: expected an integer >= {}, got '{}'", key_name(section, key), lo, raw));
}

bool to_bool(const std::string& section, const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(fmt::format("{}: expected true or false, got '{}'", key_name(section, key), raw));
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> items;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<double> to_reals(const std::string& section, const std::string& key, const std::string& raw) {
  std::vector<double> out;
  for (const auto& item : split_list(raw)) out.push_back(to_real(section, key, item));
  if (out.empty()) throw ConfigError(fmt::format("{}: empty list", key_name(section, key)));
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& raw) {
  std::filesystem::path p(trim(raw));
  if (p.is_relative()) p = base / p;
  return p.lexically_normal();
}

void read_problem(const pt::ptree& t, ProblemSection& p, const std::filesystem::path& base) {
  const std::string s = "problem";
  for (const auto& [key, node] : t) {
    const std::string v = node.data();
    if (key == "kind") {
      const std::string k = trim(v);
      if (k == "tv") p.kind = ProblemKind::tv;
      else if (k == "scalar") p.kind = ProblemKind::scalar;
      else throw ConfigError(fmt::format("problem.kind: expected tv or scalar, got '{}'", v));
    } else if (key == "n1") p.n1 = to_integer(s, key, v, 2);
    else if (key == "n2") p.n2 = to_integer(s, key, v, 2);
    else if (key == "peak") p.peak = to_real(s, key, v);
    else if (key == "image") {
      if (!trim(v).empty()) p.image = resolve(base, v);
    } else if (key == "alpha") p.alpha = to_real(s, key, v);
    else if (key == "blur_size") p.blur_size = to_integer(s, key, v, 1);
    else if (key == "blur_std") p.blur_std = to_real(s, key, v);
    else if (key == "noise_std") p.noise_std = to_real(s, key, v);
    else if (key == "dim") p.dim = to_integer(s, key, v, 1);
    else if (key == "slope") p.slope = to_real(s, key, v);
    else if (key == "offset") p.offset = to_real(s, key, v);
    else if (key == "link_scale") p.link_scale = to_real(s, key, v);
  }
  if (!(p.peak > 0.0)) throw ConfigError("problem.peak must be positive");
  if (!(p.alpha >= 0.0)) throw ConfigError("problem.alpha must be nonnegative");
  if (p.blur_size % 2 == 0) throw ConfigError("problem.blur_size must be odd");
  if (!(p.blur_std > 0.0)) throw ConfigError("problem.blur_std must be positive");
  if (!(p.noise_std >= 0.0)) throw ConfigError("problem.noise_std must be nonnegative");
  if (!(p.slope >= 0.0)) throw ConfigError("problem.slope must be nonnegative");
}

void read_solver(const pt::ptree& t, SolverSection& o) {
  const std::string s = "solver";
  for (const auto& [key, node] : t) {
    const std::string v = node.data();
    if (key == "tau") o.tau = to_real(s, key, v);
    else if (key == "steps") {
      const std::string k = trim(v);
      if (k == "boundary") o.steps = StepRule::boundary;
      else if (k == "condat") o.steps = StepRule::condat;
      else if (k == "explicit") o.steps = StepRule::explicit_sigmas;
      else throw ConfigError(fmt::format("solver.steps: expected boundary, condat or explicit, got '{}'", v));
    } else if (key == "gamma1") o.gamma1 = to_real(s, key, v);
    else if (key == "gamma2") o.gamma2 = to_real(s, key, v);
    else if (key == "sigma1") o.sigma1 = to_real(s, key, v);
    else if (key == "sigma2") o.sigma2 = to_real(s, key, v);
    else if (key == "sigma3") o.sigma3 = to_real(s, key, v);
    else if (key == "lambda") o.lambda = to_real(s, key, v);
    else if (key == "eps") o.eps = to_real(s, key, v);
    else if (key == "max_iter") o.max_iter = static_cast<std::size_t>(to_integer(s, key, v, 1));
    else if (key == "seed") o.seed = static_cast<std::uint64_t>(to_integer(s, key, v, 0));
  }
}

void read_output(const pt::ptree& t, OutputSection& o, const std::filesystem::path& base) {
  for (const auto& [key, node] : t) {
    if (key == "out_dir") o.out_dir = resolve(base, node.data());
    else if (key == "timing") o.timing = to_bool("output", key, node.data());
  }
}

void read_sweep(const pt::ptree& t, SweepSection& o) {
  const std::string s = "sweep";
  for (const auto& [key, node] : t) {
    const std::string v = node.data();
    if (key == "taus") o.grid.taus = to_reals(s, key, v);
    else if (key == "gamma1") o.grid.gamma1 = to_reals(s, key, v);
    else if (key == "gamma2") o.grid.gamma2 = to_reals(s, key, v);
    else if (key == "lambdas") o.grid.lambdas = to_reals(s, key, v);
    else if (key == "include_condat") o.grid.include_condat = to_bool(s, key, v);
    else if (key == "gamma_order") {
      const std::string k = trim(v);
      if (k == "table") o.grid.swap_gammas = false;
      else if (k == "swapped") o.grid.swap_gammas = true;
      else throw ConfigError(fmt::format("sweep.gamma_order: expected table or swapped, got '{}'", v));
    } else if (key == "seeds") {
      o.seeds.clear();
      for (const auto& item : split_list(v)) o.seeds.push_back(static_cast<std::uint64_t>(to_integer(s, key, item, 0)));
      if (o.seeds.empty()) throw ConfigError("sweep.seeds: empty list");
    } else if (key == "workers") o.workers = static_cast<unsigned>(to_integer(s, key, v, 0));
  }
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("config: {} (line {})", e.message(), e.line()));
  }

  for (const auto& [section, node] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) {
      if (node.empty()) throw ConfigError(fmt::format("config: key '{}' outside any section", section));
      throw ConfigError(fmt::format("config: unknown section [{}]", section));
    }
    for (const auto& [key, ignored] : node) {
      if (!it->second.count(key)) throw ConfigError(fmt::format("config: unknown key '{}'", key_name(section, key)));
    }
  }

  RunConfig cfg;
  cfg.output.out_dir = (base_dir / cfg.output.out_dir).lexically_normal();
  if (auto t = tree.get_child_optional("problem")) read_problem(*t, cfg.problem, base_dir);
  if (auto t = tree.get_child_optional("solver")) read_solver(*t, cfg.solver);
  if (auto t = tree.get_child_optional("output")) read_output(*t, cfg.output, base_dir);
  if (auto t = tree.get_child_optional("sweep")) read_sweep(*t, cfg.sweep);
  if (auto t = tree.get_child_optional("diagnose")) {
    for (const auto& [key, node] : *t) {
      if (key == "max_dense_dim") cfg.diagnose.max_dense_dim = to_integer("diagnose", key, node.data(), 0);
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("config: cannot read {}", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::filesystem::absolute(path).parent_path());
}

void apply_overrides(RunConfig& cfg, const Overrides& o) {
  if (o.seed) {
    cfg.solver.seed = *o.seed;
    cfg.sweep.seeds = {*o.seed};
  }
  if (o.eps) cfg.solver.eps = *o.eps;
  if (o.lambda) {
    cfg.solver.lambda = *o.lambda;
    cfg.sweep.grid.lambdas = {*o.lambda};
  }
  if (o.max_iter) cfg.solver.max_iter = *o.max_iter;
  if (o.out_dir) cfg.output.out_dir = std::filesystem::absolute(*o.out_dir).lexically_normal();
  if (o.workers) cfg.sweep.workers = *o.workers;
}

std::optional<unsigned> workers_from_env() {
  const char* raw = std::getenv(kWorkersEnv);
  if (!raw) return std::nullopt;
  try {
    std::size_t used = 0;
    const long v = std::stol(raw, &used);
    if (used == std::string(raw).size() && v >= 0) return static_cast<unsigned>(v);
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

}  // namespace critpd::cli
