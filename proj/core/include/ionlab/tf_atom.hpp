#pragma once

#include <iosfwd>
#include <vector>

namespace ionlab {

/// Log-spaced radial grid. With scale_with_Z the endpoints are multiplied by
/// Z^(-1/3), the natural Thomas-Fermi length.
struct RadialGridSpec {
  double r_min = 1e-4;
  double r_max = 1e2;
  int points = 2000;
  bool scale_with_Z = true;
};

std::vector<double> make_log_grid(double Z, const RadialGridSpec& spec);

struct TFSolverOptions {
  double damping = 0.3;       ///< initial mixing weight of the new density
  double min_damping = 1e-4;  ///< floor for the adaptive back-off
  int max_iterations = 10000;
  double tolerance = 1e-8;         ///< on TFSolution::residual
  double charge_tolerance = 1e-6;  ///< relative to Z, for the mu bisection
  int max_bisections = 200;
};

/// Radial Thomas-Fermi atom
///   gamma rho^(2/3) = [ Z/r - (rho * 1/|x|)(r) - mu ]_+
/// on a log grid.
struct TFSolution {
  double Z = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
  std::vector<double> grid;
  std::vector<double> rho;                 ///< density per unit volume at grid radii
  std::vector<double> electron_potential;  ///< (rho * 1/|x|)(r) at grid radii
  double total_charge = 0.0;               ///< 4 pi int rho r^2 dr (trapezoid in log r)
  /// max_r | gamma rho^(2/3) - [Z/r - V - mu]_+ | / (Z/r): the equation
  /// defect relative to the unscreened nuclear potential.
  double residual = 0.0;
  int iterations = 0;  ///< fixed-point iterations summed over the mu search
  int bisections = 0;
};

/// Damped fixed-point solve at fixed chemical potential mu, optionally warm
/// started from `initial_rho`. Throws ConvergenceError with the residual
/// trace when the iteration budget is exhausted.
TFSolution solve_tf_fixed_mu(double Z, double gamma, double mu, const std::vector<double>& grid,
                             const TFSolverOptions& opts = {},
                             const std::vector<double>* initial_rho = nullptr);

/// Solves for the density whose charge is min(N_target, Z) (within
/// charge_tolerance * Z) by bisection on mu >= 0. When even mu = 0 binds no
/// more than the target, the mu = 0 solution is returned.
TFSolution solve_tf(double Z, double N_target, double gamma, const RadialGridSpec& grid_spec = {},
                    const TFSolverOptions& opts = {});

/// Trapezoid weights in log r for 4 pi int f(r) r^2 dr = sum_k w_k f(r_k).
std::vector<double> shell_weights(const std::vector<double>& grid);

/// Z/r - (rho * 1/|x|)(r) at any r > 0.
double screened_potential(const TFSolution& sol, double r);

/// 4 pi int_0^R rho r^2 dr with linear interpolation on the last log interval.
double charge_within(const TFSolution& sol, double R);

struct MomentCheck {
  double lhs = 0.0;  ///< (1 - 1/k) 4 pi int_0^R rho r^2 dr
  double rhs = 0.0;  ///< Z
  bool ok = false;   ///< lhs <= rhs + tolerance
};

/// Moment form of the ionization bound. Throws DomainError for k <= 1 or R
/// outside the grid.
MomentCheck moment_check(const TFSolution& sol, double k, double R, double tolerance = -1.0);

/// CSV with header "r,rho,phi_screened", one row per grid point.
void write_tf_csv(std::ostream& os, const TFSolution& sol);
/// JSON object {Z, gamma, mu, total_charge, residual}.
void write_tf_sidecar(std::ostream& os, const TFSolution& sol);

/// Length scale b with r = b x mapping the neutral atom onto the universal
/// equation chi'' = chi^(3/2) / sqrt(x): b = gamma / ((4 pi)^(2/3) Z^(1/3)).
double tf_length_scale(double Z, double gamma);

}  // namespace ionlab
