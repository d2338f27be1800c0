#include "critpd/km.hpp"

#include "critpd/errors.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <limits>

namespace critpd {

RelaxationSchedule::RelaxationSchedule(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("RelaxationSchedule: no relaxation values");
  for (double l : values_) {
    if (!(l >= 0.0 && l <= 2.0)) throw DomainError(fmt::format("RelaxationSchedule: lambda {} outside [0, 2]", l));
  }
}

RelaxationSchedule RelaxationSchedule::constant(double lambda) { return RelaxationSchedule({lambda}); }

RelaxationSchedule RelaxationSchedule::sequence(std::vector<double> lambdas) {
  return RelaxationSchedule(std::move(lambdas));
}

double RelaxationSchedule::at(std::size_t n) const { return values_[n % values_.size()]; }

double RelaxationSchedule::divergence_mass(std::size_t terms) const {
  double mass = 0.0;
  for (std::size_t n = 0; n < terms; ++n) {
    const double l = at(n);
    mass += l * (2.0 - l);
  }
  return mass;
}

std::string RelaxationSchedule::describe() const {
  if (is_constant()) return fmt::format("constant({})", values_.front());
  return fmt::format("sequence(period={})", values_.size());
}

FixedPointMap::FixedPointMap(Map map, PDState layout) : map_(std::move(map)), layout_(std::move(layout)) {
  if (!map_) throw DomainError("FixedPointMap: null map");
}

PDState FixedPointMap::apply(const PDState& z) const {
  require_same_structure(z, layout_, "FixedPointMap input");
  PDState out = map_(z);
  require_same_structure(out, layout_, "FixedPointMap output");
  return out;
}

FejerMonitor::FejerMonitor(SaddleOpV v, PDState anchor) : v_(std::move(v)), anchor_(std::move(anchor)) {}

void FejerMonitor::observe(const IterationView& view, IterTrace&) {
  distances_.push_back(v_seminorm(v_, view.current - anchor_));
}

void FejerMonitor::finish(const PDState& final_state) {
  distances_.push_back(v_seminorm(v_, final_state - anchor_));
}

double FejerMonitor::max_increase() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < distances_.size(); ++i) worst = std::max(worst, distances_[i] - distances_[i - 1]);
  return worst;
}

DisplacementMonitor::DisplacementMonitor(SaddleOpV v) : v_(std::move(v)) {}

void DisplacementMonitor::observe(const IterationView& view, IterTrace& row) {
  const double d = v_seminorm(v_, view.image - view.current);
  values_.push_back(d);
  row.v_displacement = d;
}

double DisplacementMonitor::initial() const {
  if (values_.empty()) throw DomainError("DisplacementMonitor: no samples");
  return values_.front();
}

double DisplacementMonitor::last() const {
  if (values_.empty()) throw DomainError("DisplacementMonitor: no samples");
  return values_.back();
}

void StateRecorder::observe(const IterationView& view, IterTrace&) { states_.push_back(view.current); }

void StateRecorder::finish(const PDState& final_state) { states_.push_back(final_state); }

double residual_rel(const PDState& z_next, const PDState& z) {
  require_same_structure(z_next, z, "residual_rel");
  const double denom = squared_norm(z);
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(squared_norm(z_next - z) / denom);
}

KMResult km_iterate(const FixedPointMap& s, PDState z0, const RelaxationSchedule& schedule,
                    const KMOptions& options) {
  if (!(options.eps >= 0.0)) throw DomainError("km_iterate: eps must be nonnegative");
  require_same_structure(z0, s.layout(), "km_iterate initial state");

  KMResult result;
  const double mass = schedule.divergence_mass(options.max_iter);
  if (mass < options.divergence_floor) {
    result.warnings.push_back(fmt::format(
        "relaxation schedule {} has sum lambda(2-lambda) = {} over {} steps, below floor {}",
        schedule.describe(), mass, options.max_iter, options.divergence_floor));
  }

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  PDState z = std::move(z0);
  result.trace.reserve(std::min<std::size_t>(options.max_iter, 100000));

  for (std::size_t n = 0; n < options.max_iter; ++n) {
    const double lambda = schedule.at(n);
    PDState image = s.apply(z);
    PDState next = (1.0 - lambda) * z + lambda * image;

    IterTrace row;
    row.n = n;
    row.residual = residual_rel(next, z);
    if (options.objective) row.objective = options.objective(next);
    const IterationView view{n, lambda, z, image, next};
    for (Monitor* m : options.monitors) m->observe(view, row);
    row.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    result.trace.push_back(row);

    if (!next.all_finite()) {
      result.warnings.push_back(fmt::format("non-finite iterate at n = {}", n));
      result.iterations = n + 1;
      break;
    }
    z = std::move(next);
    result.iterations = n + 1;
    if (row.residual < options.eps) {
      result.converged = true;
      break;
    }
  }

  for (Monitor* m : options.monitors) m->finish(z);
  result.state = std::move(z);
  return result;
}

}  // namespace critpd
