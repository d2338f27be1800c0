#include "critpd/saddle.hpp"

#include "critpd/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace critpd {

SaddleOpV::SaddleOpV(Precond upsilon, std::vector<Precond> sigmas, std::vector<LinOp> links)
    : upsilon_(std::move(upsilon)), sigmas_(std::move(sigmas)), links_(std::move(links)) {
  if (sigmas_.size() != links_.size()) {
    throw DimensionError("SaddleOpV: number of dual preconditioners and linear blocks differ");
  }
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (links_[i].dom_dim() != upsilon_.dim()) {
      throw DimensionError(fmt::format("SaddleOpV: block {} domain does not match primal dimension", i));
    }
    if (links_[i].cod_dim() != sigmas_[i].dim()) {
      throw DimensionError(fmt::format("SaddleOpV: block {} codomain does not match its preconditioner", i));
    }
  }
}

Index SaddleOpV::total_dim() const {
  Index n = upsilon_.dim();
  for (const auto& s : sigmas_) n += s.dim();
  return n;
}

PDState SaddleOpV::zero_state() const {
  PDState z;
  z.primal = HVector(upsilon_.dim());
  for (const auto& s : sigmas_) z.duals.emplace_back(s.dim());
  return z;
}

bool SaddleOpV::accepts(const PDState& z) const {
  if (z.primal.size() != upsilon_.dim() || z.duals.size() != sigmas_.size()) return false;
  for (std::size_t i = 0; i < sigmas_.size(); ++i) {
    if (z.duals[i].size() != sigmas_[i].dim()) return false;
  }
  return true;
}

PDState SaddleOpV::apply(const PDState& z) const {
  if (!accepts(z)) throw DimensionError("SaddleOpV::apply: state does not match block dimensions");
  PDState out;
  out.primal = upsilon_.apply_inverse(z.primal);
  out.duals.reserve(links_.size());
  for (std::size_t i = 0; i < links_.size(); ++i) {
    out.primal -= links_[i].apply_adjoint(z.duals[i]);
    out.duals.push_back(sigmas_[i].apply_inverse(z.duals[i]) - links_[i].apply(z.primal));
  }
  return out;
}

PDState saddle_apply(const SaddleOpV& v, const PDState& z) { return v.apply(z); }

double v_seminorm(const SaddleOpV& v, const PDState& z) {
  if (!v.accepts(z)) throw DimensionError("v_seminorm: state does not match block dimensions");
  // Split the form into its diagonal part and the coupling so the roundoff
  // scale is known: <Vz,z> = <U^-1 x,x> + sum <S_i^-1 u_i,u_i> - 2 sum <L_i x,u_i>.
  double diagonal = dot(z.primal, v.upsilon().apply_inverse(z.primal));
  double coupling = 0.0;
  for (std::size_t i = 0; i < v.links().size(); ++i) {
    diagonal += dot(z.duals[i], v.sigmas()[i].apply_inverse(z.duals[i]));
    coupling += dot(v.links()[i].apply(z.primal), z.duals[i]);
  }
  const double form = diagonal - 2.0 * coupling;
  const double scale = std::max(squared_norm(z), diagonal);
  if (form < -kSeminormNegativeSlack * scale) {
    throw NotMonotoneError(
        fmt::format("v_seminorm: quadratic form {} is negative (scale {}); step-size condition violated",
                    form, scale),
        form);
  }
  return std::sqrt(std::max(form, 0.0));
}

double cocoercivity_constant(double tau, double sigma) {
  if (!(tau > 0.0) || !(sigma > 0.0)) {
    throw DomainError(fmt::format("cocoercivity_constant: tau={} and sigma={} must be positive", tau, sigma));
  }
  return tau * sigma / (tau + sigma);
}

}  // namespace critpd
