#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "ionlab/functionals.hpp"
#include "ionlab/geometry.hpp"

namespace ionlab {

/// Placement convention for d = 1 configurations.
enum class LineConvention {
  FullLine,  ///< points anywhere on R
  HalfLine,  ///< points on the open positive ray
};

struct SearchOptions {
  int restarts = 8;
  int max_iterations = 3000;  ///< local-solver iterations per stage

  // Log-sum-exp temperature schedule for minimax objectives.
  double tau_initial = 1.0;
  double tau_decay = 0.5;
  double tau_floor = 1e-4;

  // Backtracking line search.
  double initial_step = 1.0;
  double step_shrink = 0.5;
  double armijo = 1e-4;
  int lbfgs_memory = 8;

  // Simulated-annealing fallback, triggered by a relative spread of the
  // per-restart values above anneal_trigger.
  double anneal_temperature = 1e-2;  ///< relative to |best value|
  double anneal_cooling = 0.995;
  int anneal_steps = 2000;
  double anneal_trigger = 1e-3;

  std::uint64_t seed = 0x5EEDULL;
  double tolerance = 1e-9;  ///< relative change in value that counts as converged

  int jobs = 0;  ///< worker threads for restarts; 0 = hardware concurrency

  /// Extra starting configurations, run after the regular restarts.
  std::vector<PointConfiguration> warm_starts;

  /// Throws ConfigurationError on non-positive counts, decay outside (0,1), ...
  void validate() const;
};

struct OptimizationResult {
  double best_value = 0.0;
  std::variant<std::monostate, PointConfiguration, RadialMeasure> best;
  int restarts = 0;
  long long evaluations = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  std::vector<double> per_restart_values;
  /// Best value after each accepted step (measure search only; non-increasing).
  std::vector<double> trace;
  bool annealed = false;
  /// Smallest normalized pairwise distance and radius of the best
  /// configuration; small values flag minimizers approaching a collision or
  /// the nucleus.
  double min_pair_separation = 0.0;
  double min_radius = 0.0;

  const PointConfiguration& configuration() const { return std::get<PointConfiguration>(best); }
  const RadialMeasure& measure() const { return std::get<RadialMeasure>(best); }
};

/// Multi-start global minimization of a configuration functional over N
/// points in R^d.
///
/// Scale-invariant functionals are minimized directly; SigalExcess and
/// LsstValue are minimized in the gauge sum_i |x_i| = N. Minimax objectives
/// (QMinimax, LsstValue) are smoothed by log-sum-exp with a decreasing
/// temperature and then polished on the exact max. best_value is always the
/// exact functional at best_config (normalized), hence an upper bound on the
/// infimum.
OptimizationResult minimize_config(const FunctionalKind& kind, int N, int d,
                                   const SearchOptions& opts,
                                   LineConvention convention = LineConvention::FullLine);

/// Minimizes measure_ratio over probability weights on a fixed radial grid by
/// projected-gradient descent on the simplex.
OptimizationResult minimize_measure_ratio(std::span<const double> radii_grid,
                                          const SearchOptions& opts);

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::span<const double> v);

struct NuEstimate {
  double nu = 0.0;     ///< N - inf Q
  double inf_q = 0.0;  ///< best found value of q_minimax (upper bound on the infimum)
  double spread = 0.0;  ///< max - min of the per-restart values
  OptimizationResult result;
};

/// nu(N, d) = N - inf Q. The C-constant inequality holds for (N, d) with
/// constant C iff C >= nu. `half_line` is only meaningful for d = 1.
NuEstimate estimate_nu(int N, int d, bool half_line, const SearchOptions& opts);
double nu_constant(int N, int d, bool half_line, const SearchOptions& opts);

struct EpsilonBisection {
  double epsilon = 0.0;  ///< midpoint of the final bracket
  double lower = 0.0;
  double upper = 1.0;
  int steps = 0;
};

/// Smallest epsilon such that the minimum over N-point configurations of
/// lsst_value is non-negative, bracketed to width <= width.
EpsilonBisection bisect_epsilon_bracket(int N, int d, const SearchOptions& opts,
                                        LineConvention convention = LineConvention::FullLine,
                                        double width = 1e-3);
double bisect_epsilon(int N, int d, const SearchOptions& opts,
                      LineConvention convention = LineConvention::FullLine);

/// Deterministic symmetric starting configuration (antipodal pair, regular
/// polygon, tetrahedron, Fibonacci sphere, alternating/increasing line points).
PointConfiguration symmetric_configuration(int N, int d, LineConvention convention);

}  // namespace ionlab
