#include "local_search.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace ionlab::detail {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

struct CorrectionPair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

// Two-loop recursion: returns -H g.
std::vector<double> lbfgs_direction(const std::deque<CorrectionPair>& memory,
                                    std::span<const double> g) {
  std::vector<double> q(g.begin(), g.end());
  std::vector<double> alpha(memory.size());
  for (std::size_t m = memory.size(); m-- > 0;) {
    alpha[m] = memory[m].rho * dot(memory[m].s, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alpha[m] * memory[m].y[i];
  }
  if (!memory.empty()) {
    const auto& last = memory.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& v : q) v *= gamma;
  }
  for (std::size_t m = 0; m < memory.size(); ++m) {
    const double beta = memory[m].rho * dot(memory[m].y, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += (alpha[m] - beta) * memory[m].s[i];
  }
  for (double& v : q) v = -v;
  return q;
}

}  // namespace

LocalResult lbfgs_minimize(std::vector<double>& x, const SmoothObjective& f,
                           const LbfgsSettings& settings) {
  const std::size_t n = x.size();
  LocalResult out;
  std::vector<double> g(n), g_new(n), x_new(n);
  double fx = f(x, g);
  ++out.evaluations;
  if (!std::isfinite(fx)) {
    out.value = fx;
    return out;
  }

  std::deque<CorrectionPair> memory;
  int quiet = 0;
  for (int it = 0; it < settings.max_iterations; ++it) {
    out.iterations = it + 1;
    std::vector<double> dir = lbfgs_direction(memory, g);
    double slope = dot(g, dir);
    double step = 1.0;
    if (!(slope < 0.0) || memory.empty()) {
      if (!(slope < 0.0)) memory.clear();
      for (std::size_t i = 0; i < n; ++i) dir[i] = -g[i];
      slope = -dot(g, g);
      const double gnorm = std::sqrt(-slope);
      if (gnorm == 0.0) {
        out.converged = true;
        break;
      }
      step = settings.initial_step / std::max(1.0, gnorm);
    }

    double f_new = std::numeric_limits<double>::infinity();
    bool accepted = false;
    while (step > 1e-20) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * dir[i];
      f_new = f(x_new, g_new);
      ++out.evaluations;
      if (std::isfinite(f_new) && f_new <= fx + settings.armijo * step * slope) {
        accepted = true;
        break;
      }
      step *= settings.shrink;
    }
    if (!accepted) {
      if (!memory.empty()) {
        memory.clear();
        continue;
      }
      out.converged = true;  // no descent possible at machine resolution
      break;
    }

    CorrectionPair pair{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      pair.s[i] = x_new[i] - x[i];
      pair.y[i] = g_new[i] - g[i];
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > 1e-16 * std::sqrt(dot(pair.s, pair.s) * dot(pair.y, pair.y))) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (static_cast<int>(memory.size()) > settings.memory) memory.pop_front();
    }

    const double change = fx - f_new;
    x.swap(x_new);
    g.swap(g_new);
    fx = f_new;

    if (change <= settings.tolerance * std::max(1.0, std::abs(fx))) {
      if (++quiet >= 3) {
        out.converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
  }
  out.value = fx;
  return out;
}

LocalResult compass_polish(std::vector<double>& x, const ExactObjective& f, double initial_step,
                           double min_step, long long max_evaluations) {
  LocalResult out;
  double fx = f(x);
  ++out.evaluations;
  double h = initial_step;
  while (h >= min_step && out.evaluations < max_evaluations) {
    bool improved = false;
    for (std::size_t i = 0; i < x.size() && out.evaluations < max_evaluations; ++i) {
      for (double sign : {1.0, -1.0}) {
        const double saved = x[i];
        x[i] = saved + sign * h;
        const double trial = f(x);
        ++out.evaluations;
        if (trial < fx) {
          fx = trial;
          improved = true;
          break;
        }
        x[i] = saved;
      }
    }
    ++out.iterations;
    if (!improved) h *= 0.5;
  }
  out.converged = h < min_step;
  out.value = fx;
  return out;
}

}  // namespace ionlab::detail
