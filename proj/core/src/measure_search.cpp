#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ionlab/error.hpp"
#include "ionlab/functionals.hpp"
#include "ionlab/optimizer.hpp"
#include "ionlab/random.hpp"
#include "ionlab/parallel.hpp"

namespace ionlab {

std::vector<double> project_to_simplex(std::span<const double> v) {
  if (v.empty()) throw ConfigurationError("cannot project an empty vector");
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  std::vector<double> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = std::max(v[i] - theta, 0.0);
  return w;
}

namespace {

struct RatioModel {
  std::span<const double> radii;
  std::vector<double> kernel;  // K x K, radial_beta_kernel(r_k, r_l)

  explicit RatioModel(std::span<const double> r) : radii(r), kernel(r.size() * r.size()) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      for (std::size_t l = 0; l < r.size(); ++l) kernel[k * r.size() + l] = radial_beta_kernel(r[k], r[l]);
    }
  }

  // Value of Q/L and, if requested, its gradient.
  double value(std::span<const double> w, std::vector<double>* grad) const {
    const std::size_t K = radii.size();
    std::vector<double> kw(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
      double s = 0.0;
      const double* row = kernel.data() + k * K;
      for (std::size_t l = 0; l < K; ++l) s += row[l] * w[l];
      kw[k] = s;
    }
    const double q = std::inner_product(w.begin(), w.end(), kw.begin(), 0.0);
    const double l = std::inner_product(w.begin(), w.end(), radii.begin(), 0.0);
    if (!(l > 0.0)) return std::numeric_limits<double>::infinity();
    if (grad) {
      grad->resize(K);
      for (std::size_t k = 0; k < K; ++k) (*grad)[k] = 2.0 * kw[k] / l - q * radii[k] / (l * l);
    }
    return q / l;
  }
};

struct MeasureOutcome {
  double value = 0.0;
  std::vector<double> weights;
  std::vector<double> trace;
  long long evaluations = 0;
  bool converged = false;
};

MeasureOutcome descend(const RatioModel& model, std::vector<double> w, const SearchOptions& opts) {
  MeasureOutcome out;
  std::vector<double> g, trial(w.size());
  double fw = model.value(w, &g);
  out.evaluations = 1;
  out.trace.push_back(fw);
  double step = opts.initial_step;
  int quiet = 0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    bool accepted = false;
    double f_trial = fw;
    while (step > 1e-18) {
      for (std::size_t k = 0; k < w.size(); ++k) trial[k] = w[k] - step * g[k];
      trial = project_to_simplex(trial);
      double decrease = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k) decrease += g[k] * (w[k] - trial[k]);
      f_trial = model.value(trial, nullptr);
      ++out.evaluations;
      if (f_trial <= fw - opts.armijo * decrease) {
        accepted = true;
        break;
      }
      step *= opts.step_shrink;
    }
    if (!accepted) {
      out.converged = true;
      break;
    }
    const double change = fw - f_trial;
    w.swap(trial);
    fw = model.value(w, &g);
    ++out.evaluations;
    out.trace.push_back(fw);
    step = std::min(step * 2.0, 1e6);
    if (change <= opts.tolerance * 1e-3 * fw) {
      if (++quiet >= 20) {
        out.converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
  }
  out.value = fw;
  out.weights = std::move(w);
  return out;
}

}  // namespace

OptimizationResult minimize_measure_ratio(std::span<const double> radii_grid,
                                          const SearchOptions& opts) {
  opts.validate();
  if (radii_grid.empty()) throw ConfigurationError("radial grid must not be empty");
  for (std::size_t k = 0; k < radii_grid.size(); ++k) {
    if (!(radii_grid[k] > 0.0) || !std::isfinite(radii_grid[k]) ||
        (k > 0 && !(radii_grid[k] > radii_grid[k - 1]))) {
      throw ConfigurationError("radial grid must be positive and strictly increasing");
    }
  }
  const std::vector<double> radii(radii_grid.begin(), radii_grid.end());
  OptimizationResult result;
  result.seed = opts.seed;

  if (radii.size() == 1) {
    RadialMeasure single(radii, {1.0});
    result.best_value = measure_ratio(single);
    result.best = single;
    result.restarts = 1;
    result.evaluations = 1;
    result.converged = true;
    result.per_restart_values = {result.best_value};
    result.trace = {result.best_value};
    return result;
  }

  const RatioModel model(radii);
  const std::size_t K = radii.size();
  std::vector<MeasureOutcome> outcomes(static_cast<std::size_t>(opts.restarts));
  detail::parallel_for(opts.restarts, opts.jobs, [&](int r) {
    std::vector<double> w(K, 1.0 / static_cast<double>(K));
    if (r > 0) {
      Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
      double total = 0.0;
      for (double& v : w) {
        v = -std::log(rng.uniform_open());
        total += v;
      }
      for (double& v : w) v /= total;
    }
    auto outcome = descend(model, std::move(w), opts);
    outcome.value = measure_ratio(RadialMeasure::from_masses(radii, outcome.weights));
    outcomes[static_cast<std::size_t>(r)] = std::move(outcome);
  });

  std::size_t best = 0;
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    result.per_restart_values.push_back(outcomes[i].value);
    result.evaluations += outcomes[i].evaluations;
    for (double v : outcomes[i].trace) {
      running = std::min(running, v);
      result.trace.push_back(running);
    }
    if (outcomes[i].value < outcomes[best].value) best = i;
  }
  auto measure = RadialMeasure::from_masses(radii, outcomes[best].weights);
  result.best_value = measure_ratio(measure);
  result.best = std::move(measure);
  result.restarts = opts.restarts;
  result.converged = outcomes[best].converged;
  return result;
}

}  // namespace ionlab
