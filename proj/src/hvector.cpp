#include "critpd/hvector.hpp"

#include "critpd/errors.hpp"

#include <fmt/format.h>

#include <functional>
#include <numeric>

namespace critpd {

namespace {

Index product(const std::vector<Index>& dims) {
  return std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
}

}  // namespace

HVector::HVector(Index n) : values_(Eigen::VectorXd::Zero(n)), dims_{n} {}

HVector::HVector(Eigen::VectorXd values) : values_(std::move(values)), dims_{values_.size()} {}

HVector::HVector(Eigen::VectorXd values, std::vector<Index> dims)
    : values_(std::move(values)), dims_(std::move(dims)) {
  for (Index d : dims_) {
    if (d <= 0) throw DimensionError("HVector: dimensions must be positive");
  }
  if (product(dims_) != values_.size()) {
    throw DimensionError(fmt::format("HVector: shape product {} does not match length {}",
                                     product(dims_), values_.size()));
  }
}

HVector HVector::zeros(std::vector<Index> dims) {
  const Index n = product(dims);
  return HVector(Eigen::VectorXd::Zero(n), std::move(dims));
}

HVector HVector::constant(std::vector<Index> dims, double value) {
  const Index n = product(dims);
  return HVector(Eigen::VectorXd::Constant(n, value), std::move(dims));
}

HVector HVector::from(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return HVector(std::move(v));
}

bool HVector::all_finite() const { return values_.allFinite(); }

HVector HVector::zeros_like() const { return HVector(Eigen::VectorXd::Zero(size()), dims_); }

void require_same_size(const HVector& a, const HVector& b, const char* context) {
  if (a.size() != b.size()) {
    throw DimensionError(fmt::format("{}: length mismatch ({} vs {})", context, a.size(), b.size()));
  }
}

HVector& HVector::operator+=(const HVector& rhs) {
  require_same_size(*this, rhs, "HVector +=");
  values_ += rhs.values_;
  return *this;
}

HVector& HVector::operator-=(const HVector& rhs) {
  require_same_size(*this, rhs, "HVector -=");
  values_ -= rhs.values_;
  return *this;
}

HVector& HVector::operator*=(double s) {
  values_ *= s;
  return *this;
}

HVector operator+(HVector lhs, const HVector& rhs) { return lhs += rhs; }
HVector operator-(HVector lhs, const HVector& rhs) { return lhs -= rhs; }
HVector operator-(HVector v) { return v *= -1.0; }
HVector operator*(double s, HVector v) { return v *= s; }
HVector operator*(HVector v, double s) { return v *= s; }

double dot(const HVector& a, const HVector& b) {
  require_same_size(a, b, "dot");
  return a.values().dot(b.values());
}

double squared_norm(const HVector& v) { return v.values().squaredNorm(); }
double norm(const HVector& v) { return v.values().norm(); }

PDState::PDState(HVector x, std::vector<HVector> u) : primal(std::move(x)), duals(std::move(u)) {}

Index PDState::total_size() const {
  Index n = primal.size();
  for (const auto& u : duals) n += u.size();
  return n;
}

bool PDState::same_structure(const PDState& other) const {
  if (primal.size() != other.primal.size() || duals.size() != other.duals.size()) return false;
  for (std::size_t i = 0; i < duals.size(); ++i) {
    if (duals[i].size() != other.duals[i].size()) return false;
  }
  return true;
}

bool PDState::all_finite() const {
  if (!primal.all_finite()) return false;
  for (const auto& u : duals) {
    if (!u.all_finite()) return false;
  }
  return true;
}

PDState PDState::zeros_like() const {
  PDState z;
  z.primal = primal.zeros_like();
  z.duals.reserve(duals.size());
  for (const auto& u : duals) z.duals.push_back(u.zeros_like());
  return z;
}

void require_same_structure(const PDState& a, const PDState& b, const char* context) {
  if (!a.same_structure(b)) throw DimensionError(fmt::format("{}: block structure mismatch", context));
}

PDState& PDState::operator+=(const PDState& rhs) {
  require_same_structure(*this, rhs, "PDState +=");
  primal.values() += rhs.primal.values();
  for (std::size_t i = 0; i < duals.size(); ++i) duals[i].values() += rhs.duals[i].values();
  return *this;
}

PDState& PDState::operator-=(const PDState& rhs) {
  require_same_structure(*this, rhs, "PDState -=");
  primal.values() -= rhs.primal.values();
  for (std::size_t i = 0; i < duals.size(); ++i) duals[i].values() -= rhs.duals[i].values();
  return *this;
}

PDState& PDState::operator*=(double s) {
  primal *= s;
  for (auto& u : duals) u *= s;
  return *this;
}

PDState operator+(PDState lhs, const PDState& rhs) { return lhs += rhs; }
PDState operator-(PDState lhs, const PDState& rhs) { return lhs -= rhs; }
PDState operator*(double s, PDState z) { return z *= s; }

double dot(const PDState& a, const PDState& b) {
  require_same_structure(a, b, "dot");
  double acc = a.primal.values().dot(b.primal.values());
  for (std::size_t i = 0; i < a.duals.size(); ++i) acc += a.duals[i].values().dot(b.duals[i].values());
  return acc;
}

double squared_norm(const PDState& z) {
  double acc = z.primal.values().squaredNorm();
  for (const auto& u : z.duals) acc += u.values().squaredNorm();
  return acc;
}

double norm(const PDState& z) { return std::sqrt(squared_norm(z)); }

Eigen::VectorXd flatten(const PDState& z) {
  Eigen::VectorXd flat(z.total_size());
  Index offset = 0;
  flat.segment(offset, z.primal.size()) = z.primal.values();
  offset += z.primal.size();
  for (const auto& u : z.duals) {
    flat.segment(offset, u.size()) = u.values();
    offset += u.size();
  }
  return flat;
}

PDState unflatten(const Eigen::VectorXd& flat, const PDState& layout) {
  if (flat.size() != layout.total_size()) throw DimensionError("unflatten: length does not match layout");
  PDState z;
  Index offset = 0;
  z.primal = HVector(flat.segment(offset, layout.primal.size()), layout.primal.dims());
  offset += layout.primal.size();
  z.duals.reserve(layout.duals.size());
  for (const auto& u : layout.duals) {
    z.duals.emplace_back(flat.segment(offset, u.size()), u.dims());
    offset += u.size();
  }
  return z;
}

}  // namespace critpd
