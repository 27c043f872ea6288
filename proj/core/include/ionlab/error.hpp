#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ionlab {

/// Argument outside the mathematical domain of an operation (r <= 0, k <= 1, x == y, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input that is well-typed but degenerate for the requested functional:
/// coincident points, a point at the nucleus, vanishing first moment.
class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid dimensions, grids or search/solver options.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative solver ran out of budget. Carries the residual history.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> residual_trace)
      : std::runtime_error(what), residual_trace_(std::move(residual_trace)) {}

  const std::vector<double>& residual_trace() const noexcept { return residual_trace_; }

 private:
  std::vector<double> residual_trace_;
};

}  // namespace ionlab
