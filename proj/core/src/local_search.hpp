#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ionlab::detail {

/// Value and gradient; returns +inf for points outside the domain.
using SmoothObjective = std::function<double(std::span<const double>, std::span<double>)>;
/// Value only; returns +inf outside the domain.
using ExactObjective = std::function<double(std::span<const double>)>;

struct LbfgsSettings {
  int max_iterations = 3000;
  int memory = 8;
  double initial_step = 1.0;
  double shrink = 0.5;
  double armijo = 1e-4;
  double tolerance = 1e-9;
};

struct LocalResult {
  double value = 0.0;
  bool converged = false;
  long long evaluations = 0;
  int iterations = 0;
};

/// L-BFGS with Armijo backtracking; falls back to steepest descent whenever
/// the quasi-Newton direction is not a descent direction. Updates x in place.
LocalResult lbfgs_minimize(std::vector<double>& x, const SmoothObjective& f,
                           const LbfgsSettings& settings);

/// Coordinate (compass) descent on a possibly non-smooth objective: tries
/// +-h along each coordinate, halves h after an unsuccessful sweep.
LocalResult compass_polish(std::vector<double>& x, const ExactObjective& f, double initial_step,
                           double min_step, long long max_evaluations);

}  // namespace ionlab::detail
