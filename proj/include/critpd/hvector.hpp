#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <vector>

namespace critpd {

using Index = Eigen::Index;

/// Element of a finite-dimensional real Hilbert space: a flat coefficient
/// vector with shape metadata (e.g. {n1, n2} for an image).
///
/// Arithmetic requires equal lengths; the result keeps the left operand's shape.
class HVector {
 public:
  HVector() = default;
  explicit HVector(Index n);
  explicit HVector(Eigen::VectorXd values);
  HVector(Eigen::VectorXd values, std::vector<Index> dims);

  static HVector zeros(std::vector<Index> dims);
  static HVector constant(std::vector<Index> dims, double value);
  static HVector from(std::initializer_list<double> values);

  Index size() const noexcept { return values_.size(); }
  const std::vector<Index>& dims() const noexcept { return dims_; }

  Eigen::VectorXd& values() noexcept { return values_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }

  double& operator[](Index i) { return values_[i]; }
  double operator[](Index i) const { return values_[i]; }

  bool all_finite() const;
  HVector zeros_like() const;

  HVector& operator+=(const HVector& rhs);
  HVector& operator-=(const HVector& rhs);
  HVector& operator*=(double s);

 private:
  Eigen::VectorXd values_;
  std::vector<Index> dims_;
};

HVector operator+(HVector lhs, const HVector& rhs);
HVector operator-(HVector lhs, const HVector& rhs);
HVector operator-(HVector v);
HVector operator*(double s, HVector v);
HVector operator*(HVector v, double s);

double dot(const HVector& a, const HVector& b);
double norm(const HVector& v);
double squared_norm(const HVector& v);

/// Checks lengths match; throws DimensionError naming `context` otherwise.
void require_same_size(const HVector& a, const HVector& b, const char* context);

/// Primal-dual pair (x, (u_1, ..., u_m)) in the product space H + G_1 + ... + G_m.
struct PDState {
  HVector primal;
  std::vector<HVector> duals;

  PDState() = default;
  explicit PDState(HVector x, std::vector<HVector> u = {});

  std::size_t num_blocks() const noexcept { return duals.size(); }
  Index total_size() const;
  bool same_structure(const PDState& other) const;
  bool all_finite() const;
  PDState zeros_like() const;

  PDState& operator+=(const PDState& rhs);
  PDState& operator-=(const PDState& rhs);
  PDState& operator*=(double s);
};

PDState operator+(PDState lhs, const PDState& rhs);
PDState operator-(PDState lhs, const PDState& rhs);
PDState operator*(double s, PDState z);

double dot(const PDState& a, const PDState& b);
double squared_norm(const PDState& z);
double norm(const PDState& z);

void require_same_structure(const PDState& a, const PDState& b, const char* context);

/// Concatenates the primal block and all dual blocks.
Eigen::VectorXd flatten(const PDState& z);
/// Inverse of flatten, using `layout` for block sizes and shapes.
PDState unflatten(const Eigen::VectorXd& flat, const PDState& layout);

}  // namespace critpd
