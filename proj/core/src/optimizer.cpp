#include "ionlab/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ionlab/error.hpp"
#include "ionlab/random.hpp"
#include "ionlab/smoothed.hpp"
#include "local_search.hpp"
#include "ionlab/parallel.hpp"

namespace ionlab {

void SearchOptions::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigurationError(std::string("invalid search options: ") + what);
  };
  require(restarts >= 1, "restarts must be >= 1");
  require(max_iterations >= 1, "max_iterations must be >= 1");
  require(tau_initial > 0.0, "tau_initial must be positive");
  require(tau_decay > 0.0 && tau_decay < 1.0, "tau_decay must lie in (0,1)");
  require(tau_floor > 0.0 && tau_floor <= tau_initial, "tau_floor must lie in (0, tau_initial]");
  require(initial_step > 0.0, "initial_step must be positive");
  require(step_shrink > 0.0 && step_shrink < 1.0, "step_shrink must lie in (0,1)");
  require(armijo > 0.0 && armijo < 1.0, "armijo must lie in (0,1)");
  require(lbfgs_memory >= 1, "lbfgs_memory must be >= 1");
  require(anneal_temperature > 0.0, "anneal_temperature must be positive");
  require(anneal_cooling > 0.0 && anneal_cooling < 1.0, "anneal_cooling must lie in (0,1)");
  require(anneal_steps >= 0, "anneal_steps must be >= 0");
  require(anneal_trigger > 0.0, "anneal_trigger must be positive");
  require(tolerance > 0.0, "tolerance must be positive");
  require(jobs >= 0, "jobs must be >= 0");
}

PointConfiguration symmetric_configuration(int N, int d, LineConvention convention) {
  if (N < 1) throw ConfigurationError("need N >= 1");
  if (d < 1 || d > 3) throw ConfigurationError("dimension must be 1, 2 or 3");
  const auto n = static_cast<std::size_t>(N);
  std::vector<double> c;
  c.reserve(n * static_cast<std::size_t>(d));
  const double pi = std::numbers::pi;
  if (d == 1) {
    for (int i = 0; i < N; ++i) {
      if (convention == LineConvention::HalfLine) {
        c.push_back(i + 1.0);
      } else {
        c.push_back((i % 2 == 0 ? 1.0 : -1.0) * (1.0 + i / 2));
      }
    }
  } else if (d == 2 || N <= 3) {
    for (int i = 0; i < N; ++i) {
      const double a = 2.0 * pi * i / N;
      c.push_back(std::cos(a));
      c.push_back(std::sin(a));
      if (d == 3) c.push_back(0.0);
    }
  } else if (N == 4) {
    c = {1, 1, 1, 1, -1, -1, -1, 1, -1, -1, -1, 1};
  } else {
    const double golden = pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < N; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / N;
      const double rho = std::sqrt(1.0 - z * z);
      c.push_back(rho * std::cos(golden * i));
      c.push_back(rho * std::sin(golden * i));
      c.push_back(z);
    }
  }
  return normalize_scale(PointConfiguration(d, std::move(c)));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One configuration-search problem. Optimization variables u map to
// coordinates x = u (full space) or x = exp(u) (half-line).
class ConfigProblem {
 public:
  ConfigProblem(const FunctionalKind& kind, int n, int d, LineConvention convention)
      : kind_(kind), n_(n), d_(d), half_line_(d == 1 && convention == LineConvention::HalfLine) {}

  bool minimax() const {
    return kind_.tag() == FunctionalTag::QMinimax || kind_.tag() == FunctionalTag::LsstValue;
  }
  bool needs_off_origin() const { return kind_.tag() != FunctionalTag::BetaRatio; }
  int dim() const { return d_; }
  int count() const { return n_; }
  bool half_line() const { return half_line_; }

  void coords(std::span<const double> u, std::vector<double>& x) const {
    x.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) x[i] = half_line_ ? std::exp(u[i]) : u[i];
  }

  std::vector<double> variables(const PointConfiguration& config) const {
    std::vector<double> u(config.coords().begin(), config.coords().end());
    if (half_line_) {
      for (double& v : u) v = std::log(v);
    }
    return u;
  }

  PointConfiguration configuration(std::span<const double> u) const {
    std::vector<double> x;
    coords(u, x);
    return PointConfiguration(d_, std::move(x));
  }

  bool feasible(std::span<const double> x) const {
    for (double v : x) {
      if (!std::isfinite(v)) return false;
    }
    return is_separated(PointConfiguration(d_, {x.begin(), x.end()}), needs_off_origin());
  }

  // Smoothed objective plus collision barrier; tau is ignored by smooth kinds.
  double smooth(std::span<const double> u, double tau, std::span<double> grad) const {
    std::vector<double> x;
    coords(u, x);
    if (!feasible(x)) return kInf;
    double value = 0.0;
    switch (kind_.tag()) {
      case FunctionalTag::QMinimax: value = smooth::q_minimax(d_, x, tau, grad); break;
      case FunctionalTag::LsstValue:
        value = smooth::lsst_gauged(d_, x, kind_.parameter("epsilon"), tau, grad);
        break;
      case FunctionalTag::BetaRatio: value = smooth::beta_ratio(d_, x, grad); break;
      case FunctionalTag::SigalExcess:
        value = smooth::sigal_gauged(d_, x, kind_.parameter("Z"), grad);
        break;
      case FunctionalTag::MeasureRatio: return kInf;
    }
    value += smooth::collision_barrier(d_, x, grad);
    if (half_line_) {
      for (std::size_t i = 0; i < x.size(); ++i) grad[i] *= x[i];
    }
    return std::isfinite(value) ? value : kInf;
  }

  // Exact functional in the gauge sum |x_i| = N (no barrier).
  double exact(std::span<const double> u) const {
    std::vector<double> x;
    coords(u, x);
    if (!feasible(x)) return kInf;
    std::vector<double> scratch(x.size());
    double value = 0.0;
    switch (kind_.tag()) {
      case FunctionalTag::QMinimax: value = smooth::q_minimax_exact(d_, x, scratch); break;
      case FunctionalTag::LsstValue:
        value = smooth::lsst_gauged_exact(d_, x, kind_.parameter("epsilon"));
        break;
      case FunctionalTag::BetaRatio: value = smooth::beta_ratio(d_, x, scratch); break;
      case FunctionalTag::SigalExcess:
        value = smooth::sigal_gauged(d_, x, kind_.parameter("Z"), scratch);
        break;
      case FunctionalTag::MeasureRatio: return kInf;
    }
    return std::isfinite(value) ? value : kInf;
  }

  // Public evaluator on the normalized configuration; the reported value.
  double report(const PointConfiguration& normalized) const {
    try {
      return evaluate(kind_, normalized);
    } catch (const DegenerateInputError&) {
      return kInf;
    }
  }

  std::vector<double> normalize(std::span<const double> u) const {
    return variables(normalize_scale(configuration(u)));
  }

  std::vector<double> random_start(Rng& rng) const {
    std::vector<double> c;
    c.reserve(static_cast<std::size_t>(n_ * d_));
    for (int i = 0; i < n_; ++i) {
      if (half_line_) {
        c.push_back(2.0 * rng.uniform_open());
        continue;
      }
      double p[3];
      double r2;
      do {
        r2 = 0.0;
        for (int k = 0; k < d_; ++k) {
          p[k] = rng.uniform(-2.0, 2.0);
          r2 += p[k] * p[k];
        }
      } while (r2 > 4.0 || r2 == 0.0);
      c.insert(c.end(), p, p + d_);
    }
    return variables(normalize_scale(PointConfiguration(d_, std::move(c))));
  }

 private:
  FunctionalKind kind_;
  int n_;
  int d_;
  bool half_line_;
};

struct RestartOutcome {
  double value = kInf;
  std::vector<double> u;
  long long evaluations = 0;
  bool converged = false;
};

detail::LbfgsSettings lbfgs_settings(const SearchOptions& opts) {
  detail::LbfgsSettings s;
  s.max_iterations = opts.max_iterations;
  s.memory = opts.lbfgs_memory;
  s.initial_step = opts.initial_step;
  s.shrink = opts.step_shrink;
  s.armijo = opts.armijo;
  s.tolerance = opts.tolerance;
  return s;
}

// Smooth stages (temperature schedule for minimax kinds) followed by the
// exact-max polish, starting from u.
RestartOutcome local_descent(const ConfigProblem& problem, std::vector<double> u,
                             const SearchOptions& opts, bool floor_only = false) {
  RestartOutcome out;
  const auto settings = lbfgs_settings(opts);
  std::vector<double> taus;
  if (problem.minimax()) {
    if (!floor_only) {
      for (double t = opts.tau_initial; t > opts.tau_floor; t *= opts.tau_decay) taus.push_back(t);
    }
    taus.push_back(opts.tau_floor);
  } else {
    taus.push_back(0.0);
  }

  bool converged = false;
  for (double tau : taus) {
    auto f = [&](std::span<const double> v, std::span<double> g) {
      return problem.smooth(v, tau, g);
    };
    const auto res = detail::lbfgs_minimize(u, f, settings);
    out.evaluations += res.evaluations;
    converged = res.converged;
    if (std::isfinite(problem.exact(u))) u = problem.normalize(u);
  }

  {
    auto exact = [&](std::span<const double> v) { return problem.exact(v); };
    const long long budget = 200LL * static_cast<long long>(u.size()) + 2000;
    const auto res = detail::compass_polish(u, exact, 1e-3, 1e-12, budget);
    out.evaluations += res.evaluations;
  }

  if (std::isfinite(problem.exact(u))) u = problem.normalize(u);
  out.u = std::move(u);
  out.converged = converged;
  const auto config = problem.configuration(out.u);
  out.value = problem.report(config);
  return out;
}

// Metropolis random walk on the exact objective from a local minimum,
// followed by a floor-temperature descent from the best visited state.
RestartOutcome anneal(const ConfigProblem& problem, const RestartOutcome& start,
                      const SearchOptions& opts, std::uint64_t stream_seed) {
  RestartOutcome out = start;
  if (!std::isfinite(start.value) || opts.anneal_steps == 0) return out;
  Rng rng(stream_seed);
  std::vector<double> current = start.u;
  double f_current = problem.exact(current);
  std::vector<double> best = current;
  double f_best = f_current;
  long long evals = 1;
  double temperature = opts.anneal_temperature * std::max(std::abs(f_current), 1e-12);
  const int dim = problem.dim();
  const double sigma = problem.half_line() ? 0.2 : 0.1;
  for (int step = 0; step < opts.anneal_steps; ++step) {
    const auto i = static_cast<std::size_t>(rng.uniform_int(0, problem.count() - 1));
    std::vector<double> trial = current;
    for (int k = 0; k < dim; ++k) trial[i * dim + k] += sigma * rng.normal();
    const double f_trial = problem.exact(trial);
    ++evals;
    const double accept_draw = rng.uniform();
    if (std::isfinite(f_trial) &&
        (f_trial <= f_current || accept_draw < std::exp(-(f_trial - f_current) / temperature))) {
      current = problem.normalize(trial);
      f_current = f_trial;
      if (f_current < f_best) {
        f_best = f_current;
        best = current;
      }
    }
    temperature *= opts.anneal_cooling;
  }
  RestartOutcome polished = local_descent(problem, best, opts, true);
  polished.evaluations += evals;
  if (polished.value < out.value) {
    out.value = polished.value;
    out.u = std::move(polished.u);
  }
  out.evaluations += polished.evaluations;
  return out;
}

void fill_diagnostics(OptimizationResult& result, const PointConfiguration& config) {
  const double gauge = static_cast<double>(config.size()) / config.radial_sum();
  double pair = kInf, radius = kInf;
  for (std::size_t i = 0; i < config.size(); ++i) {
    radius = std::min(radius, config.radius(i) * gauge);
    for (std::size_t j = i + 1; j < config.size(); ++j) {
      pair = std::min(pair, config.distance(i, j) * gauge);
    }
  }
  result.min_pair_separation = pair;
  result.min_radius = radius;
}

}  // namespace

OptimizationResult minimize_config(const FunctionalKind& kind, int N, int d,
                                   const SearchOptions& opts, LineConvention convention) {
  opts.validate();
  if (!kind.acts_on_configurations()) {
    throw ConfigurationError("minimize_config: use minimize_measure_ratio for MeasureRatio");
  }
  if (N < 2) throw ConfigurationError("minimize_config requires N >= 2");
  if (d < 1 || d > 3) throw ConfigurationError("minimize_config requires d in {1,2,3}");
  if (convention == LineConvention::HalfLine && d != 1) {
    throw ConfigurationError("the half-line convention requires d = 1");
  }
  for (const auto& w : opts.warm_starts) {
    if (w.dim() != d || static_cast<int>(w.size()) != N) {
      throw ConfigurationError("warm start has the wrong shape");
    }
  }

  const ConfigProblem problem(kind, N, d, convention);
  const int total = opts.restarts + static_cast<int>(opts.warm_starts.size());
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(total));

  detail::parallel_for(total, opts.jobs, [&](int i) {
    std::vector<double> u;
    if (i == 0) {
      u = problem.variables(symmetric_configuration(N, d, convention));
    } else if (i < opts.restarts) {
      Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(i)));
      u = problem.random_start(rng);
    } else {
      const auto& w = opts.warm_starts[static_cast<std::size_t>(i - opts.restarts)];
      u = problem.variables(normalize_scale(w));
    }
    outcomes[static_cast<std::size_t>(i)] = local_descent(problem, std::move(u), opts);
  });

  auto spread_of = [&] {
    double lo = kInf, hi = -kInf;
    for (const auto& o : outcomes) {
      if (!std::isfinite(o.value)) continue;
      lo = std::min(lo, o.value);
      hi = std::max(hi, o.value);
    }
    return std::pair{lo, hi};
  };

  OptimizationResult result;
  const auto [lo, hi] = spread_of();
  if (std::isfinite(lo) && hi - lo > opts.anneal_trigger * std::max(std::abs(lo), 1e-12) &&
      opts.anneal_steps > 0) {
    result.annealed = true;
    detail::parallel_for(total, opts.jobs, [&](int i) {
      auto& o = outcomes[static_cast<std::size_t>(i)];
      o = anneal(problem, o, opts,
                 derive_seed(opts.seed ^ 0xA5A5A5A5A5A5A5A5ULL, static_cast<std::uint64_t>(i)));
    });
  }

  std::size_t best = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    result.per_restart_values.push_back(outcomes[i].value);
    result.evaluations += outcomes[i].evaluations;
    if (outcomes[i].value < outcomes[best].value) best = i;
  }
  if (!std::isfinite(outcomes[best].value)) {
    throw ConvergenceError("minimize_config: every restart left the feasible domain",
                           result.per_restart_values);
  }
  result.best_value = outcomes[best].value;
  result.best = problem.configuration(outcomes[best].u);
  result.restarts = total;
  result.converged = outcomes[best].converged;
  result.seed = opts.seed;
  fill_diagnostics(result, result.configuration());
  return result;
}

NuEstimate estimate_nu(int N, int d, bool half_line, const SearchOptions& opts) {
  const auto convention = half_line ? LineConvention::HalfLine : LineConvention::FullLine;
  NuEstimate est;
  est.result = minimize_config(FunctionalKind::q_minimax(), N, d, opts, convention);
  est.inf_q = est.result.best_value;
  est.nu = static_cast<double>(N) - est.inf_q;
  double lo = kInf, hi = -kInf;
  for (double v : est.result.per_restart_values) {
    if (!std::isfinite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  est.spread = hi - lo;
  return est;
}

double nu_constant(int N, int d, bool half_line, const SearchOptions& opts) {
  return estimate_nu(N, d, half_line, opts).nu;
}

EpsilonBisection bisect_epsilon_bracket(int N, int d, const SearchOptions& opts,
                                        LineConvention convention, double width) {
  if (N < 2) throw ConfigurationError("bisect_epsilon requires N >= 2");
  if (!(width > 0.0)) throw ConfigurationError("bisection width must be positive");
  EpsilonBisection out;
  SearchOptions inner = opts;
  while (out.upper - out.lower > width) {
    const double mid = 0.5 * (out.lower + out.upper);
    const auto res = minimize_config(FunctionalKind::lsst_value(mid), N, d, inner, convention);
    if (res.best_value >= 0.0) {
      out.upper = mid;
    } else {
      out.lower = mid;
    }
    // The best configuration of the previous level seeds the next one.
    inner.warm_starts = {res.configuration()};
    ++out.steps;
  }
  out.epsilon = 0.5 * (out.lower + out.upper);
  return out;
}

double bisect_epsilon(int N, int d, const SearchOptions& opts, LineConvention convention) {
  return bisect_epsilon_bracket(N, d, opts, convention).epsilon;
}

}  // namespace ionlab
