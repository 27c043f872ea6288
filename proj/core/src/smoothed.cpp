#include "ionlab/smoothed.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ionlab::smooth {

namespace {

struct View {
  int dim;
  std::size_t n;
  std::span<const double> x;

  View(int d, std::span<const double> coords)
      : dim(d), n(coords.size() / static_cast<std::size_t>(d)), x(coords) {}

  const double* p(std::size_t i) const { return x.data() + i * static_cast<std::size_t>(dim); }

  double radius(std::size_t i) const {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) s += p(i)[k] * p(i)[k];
    return std::sqrt(s);
  }

  double distance(std::size_t i, std::size_t j) const {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double d = p(i)[k] - p(j)[k];
      s += d * d;
    }
    return std::sqrt(s);
  }

  std::vector<double> radii() const {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = radius(i);
    return r;
  }
};

// grad[k] += scale * x_k / |x_k|
void add_radial_gradient(const View& v, std::size_t k, double r, double scale,
                         std::span<double> grad) {
  if (r == 0.0) return;
  for (int c = 0; c < v.dim; ++c) grad[k * v.dim + c] += scale * v.p(k)[c] / r;
}

// grad[k] += scale * (x_k - x_j),  grad[j] -= scale * (x_k - x_j)
void add_pair_gradient(const View& v, std::size_t k, std::size_t j, double scale,
                       std::span<double> grad) {
  for (int c = 0; c < v.dim; ++c) {
    const double d = scale * (v.p(k)[c] - v.p(j)[c]);
    grad[k * v.dim + c] += d;
    grad[j * v.dim + c] -= d;
  }
}

// Softmax weights of terms/tau; returns tau * log sum exp(terms/tau).
double log_sum_exp(std::span<const double> terms, double tau, std::vector<double>& weights) {
  const double m = *std::max_element(terms.begin(), terms.end());
  weights.resize(terms.size());
  double s = 0.0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    weights[j] = std::exp((terms[j] - m) / tau);
    s += weights[j];
  }
  for (double& w : weights) w /= s;
  return m + tau * std::log(s);
}

std::vector<double> repulsions(const View& v) {
  std::vector<double> rep(v.n, 0.0);
  for (std::size_t i = 0; i < v.n; ++i) {
    for (std::size_t j = i + 1; j < v.n; ++j) {
      const double inv = 1.0 / v.distance(i, j);
      rep[i] += inv;
      rep[j] += inv;
    }
  }
  return rep;
}

// Gradient of sum_j w_j t_j for t_j = |x_j| P_j.
void q_weighted_gradient(const View& v, std::span<const double> r, std::span<const double> rep,
                         std::span<const double> w, std::span<double> grad) {
  std::fill(grad.begin(), grad.end(), 0.0);
  for (std::size_t k = 0; k < v.n; ++k) add_radial_gradient(v, k, r[k], w[k] * rep[k], grad);
  for (std::size_t k = 0; k < v.n; ++k) {
    for (std::size_t j = k + 1; j < v.n; ++j) {
      const double d = v.distance(k, j);
      add_pair_gradient(v, k, j, -(w[k] * r[k] + w[j] * r[j]) / (d * d * d), grad);
    }
  }
}

}  // namespace

double beta_ratio(int dim, std::span<const double> x, std::span<double> grad) {
  const View v(dim, x);
  const auto r = v.radii();
  double radial = 0.0;
  for (double ri : r) radial += ri;
  const double denom = static_cast<double>(v.n - 1) * radial;

  std::fill(grad.begin(), grad.end(), 0.0);
  // Accumulate the numerator gradient in grad first.
  double num = 0.0;
  std::vector<double> inv_sum(v.n, 0.0);
  for (std::size_t i = 0; i < v.n; ++i) {
    for (std::size_t j = i + 1; j < v.n; ++j) {
      const double d = v.distance(i, j);
      const double s = r[i] * r[i] + r[j] * r[j];
      num += s / d;
      inv_sum[i] += 1.0 / d;
      inv_sum[j] += 1.0 / d;
      add_pair_gradient(v, i, j, -s / (d * d * d), grad);
    }
  }
  for (std::size_t k = 0; k < v.n; ++k) {
    for (int c = 0; c < dim; ++c) grad[k * dim + c] += 2.0 * inv_sum[k] * v.p(k)[c];
  }
  const double value = num / denom;
  for (double& g : grad) g /= denom;
  const double scale = -value * static_cast<double>(v.n - 1) / denom;
  for (std::size_t k = 0; k < v.n; ++k) add_radial_gradient(v, k, r[k], scale, grad);
  return value;
}

double q_minimax(int dim, std::span<const double> x, double tau, std::span<double> grad) {
  const View v(dim, x);
  const auto r = v.radii();
  const auto rep = repulsions(v);
  std::vector<double> terms(v.n);
  for (std::size_t j = 0; j < v.n; ++j) terms[j] = r[j] * rep[j];
  std::vector<double> w;
  const double value = log_sum_exp(terms, tau, w);
  q_weighted_gradient(v, r, rep, w, grad);
  return value;
}

double q_minimax_exact(int dim, std::span<const double> x, std::span<double> grad) {
  const View v(dim, x);
  const auto r = v.radii();
  const auto rep = repulsions(v);
  std::size_t best = 0;
  for (std::size_t j = 1; j < v.n; ++j) {
    if (r[j] * rep[j] > r[best] * rep[best]) best = j;
  }
  std::vector<double> w(v.n, 0.0);
  w[best] = 1.0;
  q_weighted_gradient(v, r, rep, w, grad);
  return r[best] * rep[best];
}

double lsst_gauged(int dim, std::span<const double> x, double epsilon, double tau,
                   std::span<double> grad) {
  const View v(dim, x);
  const double n = static_cast<double>(v.n);
  const double charge = n * (1.0 - epsilon);
  const auto r = v.radii();
  const auto rep = repulsions(v);
  double radial = 0.0;
  for (double ri : r) radial += ri;

  std::vector<double> terms(v.n);
  for (std::size_t j = 0; j < v.n; ++j) terms[j] = rep[j] - charge / r[j];
  std::vector<double> w;
  const double lse = log_sum_exp(terms, tau, w);

  std::fill(grad.begin(), grad.end(), 0.0);
  for (std::size_t k = 0; k < v.n; ++k) {
    add_radial_gradient(v, k, r[k], w[k] * charge / (r[k] * r[k]), grad);
  }
  for (std::size_t k = 0; k < v.n; ++k) {
    for (std::size_t j = k + 1; j < v.n; ++j) {
      const double d = v.distance(k, j);
      add_pair_gradient(v, k, j, -(w[k] + w[j]) / (d * d * d), grad);
    }
  }
  const double gauge = radial / n;
  for (double& g : grad) g *= gauge;
  for (std::size_t k = 0; k < v.n; ++k) add_radial_gradient(v, k, r[k], lse / n, grad);
  return gauge * lse;
}

double lsst_gauged_exact(int dim, std::span<const double> x, double epsilon) {
  const View v(dim, x);
  const double n = static_cast<double>(v.n);
  const double charge = n * (1.0 - epsilon);
  const auto r = v.radii();
  const auto rep = repulsions(v);
  double radial = 0.0, best = -INFINITY;
  for (std::size_t j = 0; j < v.n; ++j) {
    radial += r[j];
    best = std::max(best, rep[j] - charge / r[j]);
  }
  return radial / n * best;
}

double sigal_gauged(int dim, std::span<const double> x, double Z, std::span<double> grad) {
  const View v(dim, x);
  const double n = static_cast<double>(v.n);
  const auto r = v.radii();
  double radial = 0.0;
  std::size_t f = 0;
  for (std::size_t j = 0; j < v.n; ++j) {
    radial += r[j];
    if (r[j] > r[f]) f = j;
  }
  std::fill(grad.begin(), grad.end(), 0.0);
  double excess = -Z / r[f];
  add_radial_gradient(v, f, r[f], Z / (r[f] * r[f]), grad);
  for (std::size_t i = 0; i < v.n; ++i) {
    if (i == f) continue;
    const double d = v.distance(f, i);
    excess += 1.0 / d;
    add_pair_gradient(v, f, i, -1.0 / (d * d * d), grad);
  }
  const double gauge = radial / n;
  for (double& g : grad) g *= gauge;
  for (std::size_t k = 0; k < v.n; ++k) add_radial_gradient(v, k, r[k], excess / n, grad);
  return gauge * excess;
}

double collision_barrier(int dim, std::span<const double> x, std::span<double> grad,
                         double strength, double threshold) {
  const View v(dim, x);
  const double n = static_cast<double>(v.n);
  const auto r = v.radii();
  double radial = 0.0;
  for (double ri : r) radial += ri;
  if (!(radial > 0.0)) return 0.0;

  double value = 0.0;
  double through_gauge = 0.0;  // sum over active pairs of 1/(N d)
  for (std::size_t i = 0; i < v.n; ++i) {
    for (std::size_t j = i + 1; j < v.n; ++j) {
      const double d = v.distance(i, j);
      const double dn = d * n / radial;
      if (dn >= threshold || d == 0.0) continue;
      value += strength * (1.0 / dn - 1.0 / threshold);
      through_gauge += 1.0 / (n * d);
      add_pair_gradient(v, i, j, -strength * radial / (n * d * d * d), grad);
    }
  }
  if (through_gauge > 0.0) {
    for (std::size_t k = 0; k < v.n; ++k) {
      add_radial_gradient(v, k, r[k], strength * through_gauge, grad);
    }
  }
  return value;
}

}  // namespace ionlab::smooth
