#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "ionlab/functionals.hpp"
#include "ionlab/random.hpp"
#include "ionlab/smoothed.hpp"

using namespace ionlab;

namespace {

using Objective = std::function<double(std::span<const double>, std::span<double>)>;

std::vector<double> random_coords(Rng& rng, int N, int d) {
  std::vector<double> c(static_cast<std::size_t>(N * d));
  for (double& v : c) v = rng.normal();
  return c;
}

// Largest relative deviation between the analytic gradient and central
// differences with step h.
double gradient_mismatch(const Objective& f, std::vector<double> x, double h = 1e-6) {
  std::vector<double> g(x.size()), scratch(x.size());
  f(x, g);
  double scale = 0.0;
  for (double v : g) scale = std::max(scale, std::abs(v));
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double x0 = x[k];
    x[k] = x0 + h;
    const double fp = f(x, scratch);
    x[k] = x0 - h;
    const double fm = f(x, scratch);
    x[k] = x0;
    worst = std::max(worst, std::abs((fp - fm) / (2 * h) - g[k]) / scale);
  }
  return worst;
}

}  // namespace

TEST(SmoothedGradients, BetaRatio) {
  Rng rng(1);
  for (int d = 1; d <= 3; ++d) {
    for (int trial = 0; trial < 10; ++trial) {
      auto f = [d](std::span<const double> x, std::span<double> g) {
        return smooth::beta_ratio(d, x, g);
      };
      EXPECT_LT(gradient_mismatch(f, random_coords(rng, 6, d)), 1e-5);
    }
  }
}

TEST(SmoothedGradients, MinimaxSurrogates) {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_coords(rng, 7, 3);
    EXPECT_LT(gradient_mismatch([](auto x_, auto g) { return smooth::q_minimax(3, x_, 0.3, g); }, x),
              1e-5);
    EXPECT_LT(gradient_mismatch(
                  [](auto x_, auto g) { return smooth::lsst_gauged(3, x_, 0.4, 0.3, g); }, x),
              1e-5);
    EXPECT_LT(gradient_mismatch([](auto x_, auto g) { return smooth::sigal_gauged(3, x_, 2.5, g); },
                                x),
              1e-5);
  }
}

TEST(SmoothedGradients, CollisionBarrier) {
  std::vector<double> x = {1.0, 0.0, 0.0, 1.0 + 5e-5, 2e-5, 0.0, -1.0, 0.3, 0.2};
  auto f = [](std::span<const double> x_, std::span<double> g) {
    std::fill(g.begin(), g.end(), 0.0);
    return smooth::collision_barrier(3, x_, g);
  };
  std::vector<double> g(x.size());
  EXPECT_GT(f(x, g), 0.0);
  EXPECT_LT(gradient_mismatch(f, x, 1e-9), 1e-4);
  // Inactive far from collisions.
  std::vector<double> far = {1, 0, 0, -1, 0, 0};
  std::vector<double> g2(6);
  EXPECT_EQ(f(far, g2), 0.0);
}

TEST(SmoothedValues, MatchExactFunctionals) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int N = 2 + trial % 9;
    const auto x = random_coords(rng, N, 3);
    const PointConfiguration c(3, x);
    std::vector<double> g(x.size());
    const double q = q_minimax(c);
    EXPECT_NEAR(smooth::q_minimax_exact(3, x, g), q, 1e-13 * q);
    for (double tau : {1.0, 0.1, 1e-3}) {
      const double s = smooth::q_minimax(3, x, tau, g);
      EXPECT_GE(s, q - 1e-12);
      EXPECT_LE(s, q + tau * std::log(N) + 1e-12);
    }
    EXPECT_NEAR(smooth::beta_ratio(3, x, g), beta_ratio(c), 1e-13);
    const double gauge = c.radial_sum() / N;
    EXPECT_NEAR(smooth::lsst_gauged_exact(3, x, 0.3), gauge * lsst_value(c, 0.3), 1e-12);
    EXPECT_NEAR(smooth::sigal_gauged(3, x, 1.5, g), gauge * sigal_excess(c, 1.5), 1e-12);
  }
}
