#pragma once

#include <stdexcept>
#include <string>

namespace krsteer {

/// Evaluation hit a pole (division by ~0, trig pole, or a non-finite
/// intermediate). Carries the index of the offending component when the
/// evaluation was component-wise (-1 otherwise).
class PoleError : public std::runtime_error {
 public:
  explicit PoleError(const std::string& what, int component = -1)
      : std::runtime_error(what), component_(component) {}
  int component() const { return component_; }

 private:
  int component_;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A size or iteration budget was exhausted (reported, never silently truncated).
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated mathematical precondition (misclassified branch, unreachable
/// target, point outside the validity domain, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace krsteer
