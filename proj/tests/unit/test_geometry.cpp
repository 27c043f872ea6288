#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ionlab/error.hpp"
#include "ionlab/geometry.hpp"
#include "ionlab/random.hpp"

using namespace ionlab;

namespace {

PointConfiguration random_config(Rng& rng, int N, int d) {
  std::vector<double> c(static_cast<std::size_t>(N * d));
  for (double& v : c) v = rng.normal();
  return {d, c};
}

}  // namespace

TEST(PointConfiguration, Validates) {
  EXPECT_THROW(PointConfiguration(0, {1.0}), ConfigurationError);
  EXPECT_THROW(PointConfiguration(4, {1, 2, 3, 4}), ConfigurationError);
  EXPECT_THROW(PointConfiguration(2, {1.0, 2.0, 3.0}), ConfigurationError);
  EXPECT_THROW(PointConfiguration(1, {}), ConfigurationError);
  EXPECT_THROW(PointConfiguration(1, {NAN}), ConfigurationError);
  EXPECT_THROW(PointConfiguration(1, {INFINITY}), ConfigurationError);
  // Coincident points and the origin are representable.
  EXPECT_NO_THROW(PointConfiguration(1, {0.0, 0.0}));
}

TEST(PairwiseDistances, Examples) {
  auto m = pairwise_distances(PointConfiguration(1, {0.0, 3.0}));
  EXPECT_DOUBLE_EQ(m(0, 1), 3.0);
  EXPECT_DOUBLE_EQ(m(1, 0), 3.0);
  m = pairwise_distances(PointConfiguration(3, {1, 0, 0, -1, 0, 0}));
  EXPECT_DOUBLE_EQ(m(0, 1), 2.0);
  m = pairwise_distances(PointConfiguration(2, {0.3, 0.4}));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m(0, 0), 0.0);
}

TEST(PairwiseDistances, TriangleInequalityOnRandomTriples) {
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int d = 1 + trial % 3;
    const auto m = pairwise_distances(random_config(rng, 3, d));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        EXPECT_EQ(m(i, j), m(j, i));
        for (int k = 0; k < 3; ++k) EXPECT_LE(m(i, k), m(i, j) + m(j, k) + 1e-12);
      }
    }
  }
}

TEST(RadialMeasure, Validates) {
  EXPECT_THROW(RadialMeasure({1.0, 1.0}, {0.5, 0.5}), ConfigurationError);
  EXPECT_THROW(RadialMeasure({2.0, 1.0}, {0.5, 0.5}), ConfigurationError);
  EXPECT_THROW(RadialMeasure({0.0, 1.0}, {0.5, 0.5}), ConfigurationError);
  EXPECT_THROW(RadialMeasure({1.0, 2.0}, {1.5, -0.5}), ConfigurationError);
  EXPECT_THROW(RadialMeasure({1.0, 2.0}, {0.5, 0.6}), ConfigurationError);
  EXPECT_THROW(RadialMeasure({1.0}, {1.0, 0.0}), ConfigurationError);
  EXPECT_NO_THROW(RadialMeasure({1.0, 2.0}, {0.5, 0.5 + 1e-13}));
  const auto m = RadialMeasure::from_masses({1.0, 3.0}, {2.0, 6.0});
  EXPECT_DOUBLE_EQ(m.weights()[0], 0.25);
  EXPECT_DOUBLE_EQ(m.first_moment(), 0.25 + 2.25);
}

TEST(NewtonPotential, Examples) {
  const RadialMeasure unit({1.0}, {1.0});
  EXPECT_DOUBLE_EQ(newton_potential(unit, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(newton_potential(unit, 0.5), 1.0);
  const RadialMeasure two({1.0, 2.0}, {0.5, 0.5});
  EXPECT_NEAR(newton_potential(two, 1.5), 0.5 / 1.5 + 0.5 / 2.0, 1e-15);
  EXPECT_THROW(newton_potential(unit, 0.0), DomainError);
  EXPECT_THROW(newton_potential(unit, -1.0), DomainError);
}

TEST(NewtonPotential, ScreenedChargeMonotoneAndProfileMatches) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int K = 1 + static_cast<int>(rng.uniform_int(0, 30));
    std::vector<double> radii(static_cast<std::size_t>(K)), masses(radii.size());
    double r = 0.0;
    for (int k = 0; k < K; ++k) {
      r += rng.uniform(0.01, 1.0);
      radii[static_cast<std::size_t>(k)] = r;
      masses[static_cast<std::size_t>(k)] = rng.uniform();
    }
    masses[0] += 1e-3;
    const auto m = RadialMeasure::from_masses(radii, masses);
    std::vector<double> probe;
    for (double x = 1e-3; x < 10.0 * r; x *= 1.07) probe.push_back(x);
    const auto profile = newton_potential_profile(m, probe);
    double prev = 0.0;
    for (std::size_t i = 0; i < probe.size(); ++i) {
      const double direct = newton_potential(m, probe[i]);
      EXPECT_NEAR(profile[i], direct, 1e-13 * direct);
      const double screened = direct * probe[i];
      EXPECT_GE(screened, prev - 1e-13);
      prev = screened;
    }
    EXPECT_NEAR(newton_potential(m, 1e9 * r) * 1e9 * r, 1.0, 1e-12);
  }
}

TEST(NormalizeScale, Examples) {
  auto one = normalize_scale(PointConfiguration(3, {0.0, 2.0, 0.0}));
  EXPECT_DOUBLE_EQ(one.radius(0), 1.0);
  auto pair = normalize_scale(PointConfiguration(3, {0.5, 0, 0, -0.5, 0, 0}));
  EXPECT_DOUBLE_EQ(pair.radius(0), 1.0);
  EXPECT_DOUBLE_EQ(pair.radius(1), 1.0);
  const PointConfiguration already(2, {1.0, 0.0, 0.0, -1.0});
  EXPECT_EQ(normalize_scale(already), already);
  EXPECT_THROW(normalize_scale(PointConfiguration(2, {0, 0, 0, 0})), DegenerateInputError);
}

TEST(Separation, DetectsCollisionsAndOrigin) {
  const PointConfiguration ok(1, {1.0, 2.0});
  EXPECT_TRUE(is_separated(ok, true));
  const PointConfiguration coincident(2, {1.0, 1.0, 1.0, 1.0});
  EXPECT_FALSE(is_separated(coincident, false));
  EXPECT_THROW(check_separation(coincident, false), DegenerateInputError);
  const PointConfiguration at_origin(1, {0.0, 1.0});
  EXPECT_TRUE(is_separated(at_origin, false));
  EXPECT_FALSE(is_separated(at_origin, true));
}

TEST(Serialization, RoundTripsBitForBit) {
  Rng rng(3);
  for (int d = 1; d <= 3; ++d) {
    const auto c = random_config(rng, 7, d);
    EXPECT_EQ(configuration_from_text(to_text(c)), c);
  }
  const auto m = RadialMeasure::from_masses({0.1, 0.7, 3.0}, {1.0, 2.0, 0.3});
  EXPECT_EQ(measure_from_text(to_text(m)), m);
  std::istringstream bad("2 3\n1 2\n3 4\n");
  EXPECT_ANY_THROW(read_configuration(bad));
  EXPECT_EQ(format_double(0.1), "0.1");
}
