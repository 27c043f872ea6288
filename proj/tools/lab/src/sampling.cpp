#include "ionlab/lab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace ionlab::lab {

void sample_direction(Rng& rng, double out[3]) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  out[0] = rho * std::cos(phi);
  out[1] = rho * std::sin(phi);
  out[2] = z;
}

PointConfiguration sample_ball(Rng& rng, int N, int d, double radius) {
  std::vector<double> c;
  c.reserve(static_cast<std::size_t>(N * d));
  for (int i = 0; i < N; ++i) {
    double p[3];
    double r2;
    do {
      r2 = 0.0;
      for (int k = 0; k < d; ++k) {
        p[k] = rng.uniform(-radius, radius);
        r2 += p[k] * p[k];
      }
    } while (r2 > radius * radius || r2 == 0.0);
    c.insert(c.end(), p, p + d);
  }
  return PointConfiguration(d, std::move(c));
}

PointConfiguration sample_log_radial(Rng& rng, int N, double r_lo, double r_hi) {
  std::vector<double> c;
  c.reserve(static_cast<std::size_t>(3 * N));
  const double lo = std::log(r_lo), hi = std::log(r_hi);
  for (int i = 0; i < N; ++i) {
    double u[3];
    sample_direction(rng, u);
    const double r = std::exp(rng.uniform(lo, hi));
    for (double v : u) c.push_back(r * v);
  }
  return PointConfiguration(3, std::move(c));
}

PointConfiguration sample_exponential_cloud(Rng& rng, int N) {
  std::vector<double> c;
  c.reserve(static_cast<std::size_t>(3 * N));
  for (int i = 0; i < N; ++i) {
    double u[3];
    sample_direction(rng, u);
    // Gamma(3,1) as a sum of three unit exponentials: r^2 e^{-r} dr.
    const double r = -std::log(rng.uniform_open()) - std::log(rng.uniform_open()) -
                     std::log(rng.uniform_open());
    for (double v : u) c.push_back(r * v);
  }
  return PointConfiguration(3, std::move(c));
}

}  // namespace ionlab::lab
