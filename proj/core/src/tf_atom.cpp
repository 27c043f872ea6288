#include "ionlab/tf_atom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "ionlab/error.hpp"
#include "ionlab/geometry.hpp"

namespace ionlab {

std::vector<double> make_log_grid(double Z, const RadialGridSpec& spec) {
  if (!(Z > 0.0)) throw ConfigurationError("Z must be positive");
  if (spec.points < 2 || !(spec.r_min > 0.0) || !(spec.r_max > spec.r_min)) {
    throw ConfigurationError("radial grid needs points >= 2 and 0 < r_min < r_max");
  }
  const double scale = spec.scale_with_Z ? 1.0 / std::cbrt(Z) : 1.0;
  const double lo = std::log(spec.r_min * scale);
  const double hi = std::log(spec.r_max * scale);
  std::vector<double> grid(static_cast<std::size_t>(spec.points));
  for (int k = 0; k < spec.points; ++k) {
    grid[static_cast<std::size_t>(k)] = std::exp(lo + (hi - lo) * k / (spec.points - 1));
  }
  return grid;
}

std::vector<double> shell_weights(const std::vector<double>& grid) {
  const std::size_t K = grid.size();
  std::vector<double> w(K, 0.0);
  for (std::size_t k = 0; k + 1 < K; ++k) {
    const double h = 0.5 * (std::log(grid[k + 1]) - std::log(grid[k]));
    w[k] += h;
    w[k + 1] += h;
  }
  // d r = r d(log r), so 4 pi r^2 dr = 4 pi r^3 d(log r)
  for (std::size_t k = 0; k < K; ++k) w[k] *= 4.0 * std::numbers::pi * grid[k] * grid[k] * grid[k];
  return w;
}

namespace {

struct Discretized {
  std::vector<double> potential;
  double charge = 0.0;
};

// Newton potential of the shell charges w_k rho_k placed on the grid radii.
Discretized electron_potential(const std::vector<double>& grid, const std::vector<double>& weights,
                               const std::vector<double>& rho) {
  Discretized out;
  std::vector<double> masses(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    masses[k] = weights[k] * rho[k];
    out.charge += masses[k];
  }
  if (!(out.charge > 0.0)) {
    out.potential.assign(grid.size(), 0.0);
    return out;
  }
  const auto measure = RadialMeasure::from_masses(grid, std::move(masses));
  out.potential = newton_potential_profile(measure, grid);
  for (double& v : out.potential) v *= out.charge;
  return out;
}

double equation_residual(const TFSolution& s) {
  double worst = 0.0;
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    const double nuclear = s.Z / s.grid[k];
    const double rhs = std::max(nuclear - s.electron_potential[k] - s.mu, 0.0);
    const double lhs = s.gamma * std::cbrt(s.rho[k] * s.rho[k]);
    worst = std::max(worst, std::abs(lhs - rhs) / nuclear);
  }
  return worst;
}

}  // namespace

TFSolution solve_tf_fixed_mu(double Z, double gamma, double mu, const std::vector<double>& grid,
                             const TFSolverOptions& opts, const std::vector<double>* initial_rho) {
  if (!(Z > 0.0) || !(gamma > 0.0)) throw ConfigurationError("Z and gamma must be positive");
  if (!(mu >= 0.0)) throw ConfigurationError("mu must be non-negative");
  if (grid.size() < 2) throw ConfigurationError("grid needs at least two points");
  if (!(opts.damping > 0.0 && opts.damping <= 1.0) || !(opts.min_damping > 0.0) ||
      opts.max_iterations < 1 || !(opts.tolerance > 0.0)) {
    throw ConfigurationError("invalid Thomas-Fermi solver options");
  }

  const auto weights = shell_weights(grid);
  TFSolution s;
  s.Z = Z;
  s.gamma = gamma;
  s.mu = mu;
  s.grid = grid;
  s.rho = initial_rho && initial_rho->size() == grid.size() ? *initial_rho
                                                            : std::vector<double>(grid.size(), 0.0);

  double alpha = opts.damping;
  double previous = INFINITY;
  std::vector<double> trace;
  const double inv_gamma = 1.0 / gamma;
  for (int it = 0;; ++it) {
    auto pot = electron_potential(grid, weights, s.rho);
    s.electron_potential = std::move(pot.potential);
    s.total_charge = pot.charge;
    s.residual = equation_residual(s);
    s.iterations = it;
    trace.push_back(s.residual);
    if (s.residual < opts.tolerance) break;
    if (it >= opts.max_iterations) {
      throw ConvergenceError("Thomas-Fermi fixed point did not converge (residual " +
                                 std::to_string(s.residual) + ")",
                             std::move(trace));
    }
    // Undamped iteration overshoots on long-wavelength charge modes; back off
    // whenever the defect grows.
    if (s.residual > previous) alpha = std::max(0.5 * alpha, opts.min_damping);
    previous = s.residual;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double phi = std::max(Z / grid[k] - s.electron_potential[k] - mu, 0.0);
      const double target = phi * std::sqrt(phi) * inv_gamma * std::sqrt(inv_gamma);
      s.rho[k] = (1.0 - alpha) * s.rho[k] + alpha * target;
    }
  }
  return s;
}

TFSolution solve_tf(double Z, double N_target, double gamma, const RadialGridSpec& grid_spec,
                    const TFSolverOptions& opts) {
  if (!(Z > 0.0) || !(gamma > 0.0)) throw ConfigurationError("Z and gamma must be positive");
  if (!(N_target > 0.0)) throw ConfigurationError("N_target must be positive");
  const auto grid = make_log_grid(Z, grid_spec);
  const double target = std::min(N_target, Z);
  const double tol = opts.charge_tolerance * Z;

  TFSolution low = solve_tf_fixed_mu(Z, gamma, 0.0, grid, opts);
  int iterations = low.iterations;
  if (low.total_charge <= target + tol) return low;

  double mu_lo = 0.0;
  double mu_hi = Z / grid.front();
  TFSolution best = low;
  int bisections = 0;
  while (bisections < opts.max_bisections) {
    const double mu = 0.5 * (mu_lo + mu_hi);
    TFSolution trial = solve_tf_fixed_mu(Z, gamma, mu, grid, opts, &best.rho);
    iterations += trial.iterations;
    ++bisections;
    const double miss = trial.total_charge - target;
    if (std::abs(miss) <= tol || std::abs(best.total_charge - target) > std::abs(miss)) {
      best = std::move(trial);
    }
    if (std::abs(best.total_charge - target) <= tol) break;
    if (miss > 0.0) {
      mu_lo = mu;
    } else {
      mu_hi = mu;
    }
  }
  if (std::abs(best.total_charge - target) > tol) {
    throw ConvergenceError("chemical potential bisection did not reach the target charge",
                           {best.residual});
  }
  best.iterations = iterations;
  best.bisections = bisections;
  return best;
}

double screened_potential(const TFSolution& sol, double r) {
  if (!(r > 0.0)) throw DomainError("screened_potential requires r > 0");
  const auto weights = shell_weights(sol.grid);
  std::vector<double> masses(sol.grid.size());
  double charge = 0.0;
  for (std::size_t k = 0; k < masses.size(); ++k) {
    masses[k] = weights[k] * sol.rho[k];
    charge += masses[k];
  }
  if (!(charge > 0.0)) return sol.Z / r;
  const auto measure = RadialMeasure::from_masses(sol.grid, std::move(masses));
  return sol.Z / r - charge * newton_potential(measure, r);
}

double charge_within(const TFSolution& sol, double R) {
  const auto& g = sol.grid;
  if (!(R >= g.front() && R <= g.back())) {
    throw DomainError("charge_within: R outside the radial grid");
  }
  const double four_pi = 4.0 * std::numbers::pi;
  auto f = [&](std::size_t k) { return four_pi * sol.rho[k] * g[k] * g[k] * g[k]; };
  double q = 0.0;
  for (std::size_t k = 0; k + 1 < g.size(); ++k) {
    const double t0 = std::log(g[k]), t1 = std::log(g[k + 1]);
    if (g[k + 1] <= R) {
      q += 0.5 * (t1 - t0) * (f(k) + f(k + 1));
      continue;
    }
    const double t = std::log(R);
    const double frac = (t - t0) / (t1 - t0);
    const double fR = f(k) + frac * (f(k + 1) - f(k));
    q += 0.5 * (t - t0) * (f(k) + fR);
    break;
  }
  return q;
}

MomentCheck moment_check(const TFSolution& sol, double k, double R, double tolerance) {
  if (!(k > 1.0)) throw DomainError("moment_check requires k > 1");
  if (tolerance < 0.0) tolerance = 1e-4 * sol.Z;
  MomentCheck out;
  out.lhs = (1.0 - 1.0 / k) * charge_within(sol, R);
  out.rhs = sol.Z;
  out.ok = out.lhs <= out.rhs + tolerance;
  return out;
}

void write_tf_csv(std::ostream& os, const TFSolution& sol) {
  os << "r,rho,phi_screened\n";
  for (std::size_t k = 0; k < sol.grid.size(); ++k) {
    const double phi = sol.Z / sol.grid[k] - sol.electron_potential[k];
    os << format_double(sol.grid[k]) << ',' << format_double(sol.rho[k]) << ','
       << format_double(phi) << '\n';
  }
}

void write_tf_sidecar(std::ostream& os, const TFSolution& sol) {
  os << "{\"Z\": " << format_double(sol.Z) << ", \"gamma\": " << format_double(sol.gamma)
     << ", \"mu\": " << format_double(sol.mu) << ", \"total_charge\": "
     << format_double(sol.total_charge) << ", \"residual\": " << format_double(sol.residual)
     << "}\n";
}

double tf_length_scale(double Z, double gamma) {
  if (!(Z > 0.0) || !(gamma > 0.0)) throw DomainError("tf_length_scale requires Z, gamma > 0");
  return gamma / (std::pow(4.0 * std::numbers::pi, 2.0 / 3.0) * std::cbrt(Z));
}

}  // namespace ionlab
