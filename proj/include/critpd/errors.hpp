#pragma once

#include <stdexcept>
#include <string>

namespace critpd {

/// Operand shapes or block structures do not match.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scalar parameter is outside the domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The quadratic form of a saddle operator is significantly negative.
class NotMonotoneError : public std::runtime_error {
 public:
  NotMonotoneError(const std::string& what, double quadratic_form)
      : std::runtime_error(what), quadratic_form_(quadratic_form) {}
  double quadratic_form() const noexcept { return quadratic_form_; }

 private:
  double quadratic_form_;
};

/// Power iteration hit its iteration cap; carries the last Rayleigh quotient.
class PowerIterationError : public std::runtime_error {
 public:
  PowerIterationError(const std::string& what, double last_estimate, int iterations)
      : std::runtime_error(what), last_estimate_(last_estimate), iterations_(iterations) {}
  double last_estimate() const noexcept { return last_estimate_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_estimate_;
  int iterations_;
};

/// No resolvent formula for this (preconditioner, operator family) pair.
class UnsupportedResolventError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LinearSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Step sizes violate sum_i ||sqrt(Sigma_i) L_i sqrt(Upsilon)||^2 <= 1.
class StepConditionError : public std::runtime_error {
 public:
  StepConditionError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

}  // namespace critpd
