#pragma once

#include "critpd/hvector.hpp"
#include "critpd/saddle.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace critpd {

/// Relaxation parameters lambda_n in [0, 2].
class RelaxationSchedule {
 public:
  static RelaxationSchedule constant(double lambda);
  /// Explicit values, repeated cyclically past the end.
  static RelaxationSchedule sequence(std::vector<double> lambdas);

  double at(std::size_t n) const;
  /// sum_{n < terms} lambda_n (2 - lambda_n), a finite stand-in for the
  /// divergence requirement on the series.
  double divergence_mass(std::size_t terms) const;
  bool is_constant() const noexcept { return values_.size() == 1; }
  std::string describe() const;

 private:
  explicit RelaxationSchedule(std::vector<double> values);
  std::vector<double> values_;
};

/// One row of an iteration trace. Row n compares z_{n+1} with z_n.
struct IterTrace {
  std::size_t n = 0;
  double residual = 0.0;
  std::optional<double> objective;
  std::optional<double> v_displacement;
  double wall_ms = 0.0;
};

/// A map S on a product space with fixed block structure.
class FixedPointMap {
 public:
  using Map = std::function<PDState(const PDState&)>;

  FixedPointMap(Map map, PDState layout);

  PDState apply(const PDState& z) const;
  const PDState& layout() const noexcept { return layout_; }

 private:
  Map map_;
  PDState layout_;
};

/// What a monitor sees at iteration n: z_n, S z_n and z_{n+1}.
struct IterationView {
  std::size_t n;
  double lambda;
  const PDState& current;
  const PDState& image;
  const PDState& next;
};

class Monitor {
 public:
  virtual ~Monitor() = default;
  virtual void observe(const IterationView& view, IterTrace& row) = 0;
  /// Called once with the returned state.
  virtual void finish(const PDState& /*final_state*/) {}
};

/// Records d_n = ||z_n - anchor||_V, anchor being a (numerical) fixed point.
class FejerMonitor final : public Monitor {
 public:
  FejerMonitor(SaddleOpV v, PDState anchor);

  void observe(const IterationView& view, IterTrace& row) override;
  void finish(const PDState& final_state) override;

  const std::vector<double>& distances() const noexcept { return distances_; }
  /// max_n (d_{n+1} - d_n); -inf with fewer than two samples.
  double max_increase() const;

 private:
  SaddleOpV v_;
  PDState anchor_;
  std::vector<double> distances_;
};

/// Records ||S z_n - z_n||_V and stores it in the trace row.
class DisplacementMonitor final : public Monitor {
 public:
  explicit DisplacementMonitor(SaddleOpV v);

  void observe(const IterationView& view, IterTrace& row) override;

  const std::vector<double>& values() const noexcept { return values_; }
  double initial() const;
  double last() const;

 private:
  SaddleOpV v_;
  std::vector<double> values_;
};

/// Keeps every iterate z_0, z_1, ..., z_final.
class StateRecorder final : public Monitor {
 public:
  void observe(const IterationView& view, IterTrace& row) override;
  void finish(const PDState& final_state) override;

  const std::vector<PDState>& states() const noexcept { return states_; }

 private:
  std::vector<PDState> states_;
};

struct KMOptions {
  /// 0 disables the residual stop.
  double eps = 1e-8;
  std::size_t max_iter = 10000;
  std::vector<Monitor*> monitors;
  /// Evaluated on z_{n+1} for every trace row when set.
  std::function<double(const PDState&)> objective;
  /// Warn when the schedule's divergence mass over max_iter terms is below this.
  double divergence_floor = 1.0;
};

struct KMResult {
  PDState state;
  std::vector<IterTrace> trace;
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<std::string> warnings;
};

/// sqrt(||z_next - z||^2 / ||z||^2) in the plain product norm; +inf when z = 0.
double residual_rel(const PDState& z_next, const PDState& z);

/// z_{n+1} = (1 - lambda_n) z_n + lambda_n S z_n until residual_rel < eps or
/// max_iter rows. Reaching max_iter is reported through `converged`, not thrown.
KMResult km_iterate(const FixedPointMap& s, PDState z0, const RelaxationSchedule& schedule,
                    const KMOptions& options);

}  // namespace critpd
