#pragma once

#include <span>

#include "ionlab/geometry.hpp"

// Differentiable objectives driven by the configuration optimizer.
//
// Every function takes point-major coordinates of dimension `dim`, writes the
// gradient into `grad` (same length as `x`) and returns the value. No
// separation guard is applied; callers check is_separated first.

namespace ionlab::smooth {

/// beta_ratio and its exact gradient.
double beta_ratio(int dim, std::span<const double> x, std::span<double> grad);

/// tau * log sum_j exp(t_j / tau) with t_j = |x_j| sum_{i != j} 1/|x_i - x_j|.
/// Upper bound on q_minimax, within tau * log N of it.
double q_minimax(int dim, std::span<const double> x, double tau, std::span<double> grad);

/// Exact max-term q_minimax with the gradient of the active term (lowest index on ties).
double q_minimax_exact(int dim, std::span<const double> x, std::span<double> grad);

/// (S/N) * tau * log sum_j exp(t_j / tau), S = sum_i |x_i|, with
/// t_j = sum_{i != j} 1/|x_i - x_j| - N(1 - epsilon)/|x_j|. Homogeneous of
/// degree 0; equals lsst_value at the normalized configuration when tau -> 0.
double lsst_gauged(int dim, std::span<const double> x, double epsilon, double tau,
                   std::span<double> grad);

/// (S/N) * lsst_value(x), exact max.
double lsst_gauged_exact(int dim, std::span<const double> x, double epsilon);

/// (S/N) * sigal_excess(x) and the gradient of the active (farthest) piece.
double sigal_gauged(int dim, std::span<const double> x, double Z, std::span<double> grad);

/// Soft collision barrier  strength * sum (1/d_n - 1/threshold)  over pairs
/// whose normalized distance d_n = d N / S is below `threshold`. Adds its
/// gradient into `grad` and returns the barrier value.
double collision_barrier(int dim, std::span<const double> x, std::span<double> grad,
                         double strength = 1e-6, double threshold = 1e-4);

}  // namespace ionlab::smooth
