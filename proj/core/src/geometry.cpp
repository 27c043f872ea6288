#include "ionlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ionlab/error.hpp"

namespace ionlab {

PointConfiguration::PointConfiguration(int dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ < 1 || dim_ > 3) {
    throw ConfigurationError("dimension must be 1, 2 or 3 (got " + std::to_string(dim_) + ")");
  }
  if (coords_.empty() || coords_.size() % static_cast<std::size_t>(dim_) != 0) {
    throw ConfigurationError("coordinate buffer must hold N >= 1 points of dimension " +
                             std::to_string(dim_));
  }
  if (!std::all_of(coords_.begin(), coords_.end(), [](double v) { return std::isfinite(v); })) {
    throw ConfigurationError("configuration has non-finite coordinates");
  }
}

double PointConfiguration::radius(std::size_t i) const noexcept {
  double s = 0.0;
  for (double c : point(i)) s += c * c;
  return std::sqrt(s);
}

double PointConfiguration::distance(std::size_t i, std::size_t j) const noexcept {
  const auto a = point(i);
  const auto b = point(j);
  double s = 0.0;
  for (int k = 0; k < dim_; ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

double PointConfiguration::radial_sum() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) s += radius(i);
  return s;
}

PointConfiguration PointConfiguration::scaled(double factor) const {
  std::vector<double> c = coords_;
  for (double& v : c) v *= factor;
  return PointConfiguration(dim_, std::move(c));
}

RadialMeasure::RadialMeasure(std::vector<double> radii, std::vector<double> weights)
    : radii_(std::move(radii)), weights_(std::move(weights)) {
  if (radii_.empty() || radii_.size() != weights_.size()) {
    throw ConfigurationError("measure needs K >= 1 radii and as many weights");
  }
  for (std::size_t k = 0; k < radii_.size(); ++k) {
    if (!(radii_[k] > 0.0) || !std::isfinite(radii_[k])) {
      throw ConfigurationError("measure radii must be positive and finite");
    }
    if (k > 0 && !(radii_[k] > radii_[k - 1])) {
      throw ConfigurationError("measure radii must be strictly increasing");
    }
    if (!(weights_[k] >= 0.0) || !std::isfinite(weights_[k])) {
      throw ConfigurationError("measure weights must be non-negative and finite");
    }
  }
  if (std::abs(total_mass() - 1.0) > 1e-12) {
    throw ConfigurationError("measure weights must sum to 1");
  }
}

RadialMeasure RadialMeasure::from_masses(std::vector<double> radii, std::vector<double> masses) {
  double total = 0.0;
  for (double m : masses) total += m;
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DegenerateInputError("measure masses must have positive finite total");
  }
  for (double& m : masses) m /= total;
  return RadialMeasure(std::move(radii), std::move(masses));
}

double RadialMeasure::total_mass() const noexcept {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

double RadialMeasure::first_moment() const noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < radii_.size(); ++k) s += weights_[k] * radii_[k];
  return s;
}

DistanceMatrix pairwise_distances(const PointConfiguration& config) {
  const std::size_t n = config.size();
  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = config.distance(i, j);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

double newton_potential(const RadialMeasure& measure, double r) {
  if (!(r > 0.0)) throw DomainError("newton_potential requires r > 0");
  const auto radii = measure.radii();
  const auto weights = measure.weights();
  double v = 0.0;
  for (std::size_t k = 0; k < radii.size(); ++k) v += weights[k] / std::max(r, radii[k]);
  return v;
}

std::vector<double> newton_potential_profile(const RadialMeasure& measure,
                                             std::span<const double> radii) {
  const auto atoms = measure.radii();
  const auto weights = measure.weights();
  const std::size_t K = atoms.size();

  // outer[k] = sum_{l >= k} w_l / r_l
  std::vector<double> outer(K + 1, 0.0);
  for (std::size_t k = K; k-- > 0;) outer[k] = outer[k + 1] + weights[k] / atoms[k];

  std::vector<double> out(radii.size());
  double inner = 0.0;  // mass of atoms with r_k <= r
  std::size_t k = 0;
  double prev = 0.0;
  for (std::size_t m = 0; m < radii.size(); ++m) {
    const double r = radii[m];
    if (!(r > 0.0)) throw DomainError("newton_potential requires r > 0");
    if (r < prev) throw ConfigurationError("newton_potential_profile needs increasing radii");
    prev = r;
    while (k < K && atoms[k] <= r) inner += weights[k++];
    out[m] = inner / r + outer[k];
  }
  return out;
}

PointConfiguration normalize_scale(const PointConfiguration& config) {
  const double s = config.radial_sum();
  if (!(s > 0.0)) throw DegenerateInputError("cannot normalize: every point sits at the origin");
  const double factor = static_cast<double>(config.size()) / s;
  if (factor == 1.0) return config;
  return config.scaled(factor);
}

bool is_separated(const PointConfiguration& config, bool require_off_origin,
                  double min_separation) noexcept {
  const std::size_t n = config.size();
  const double s = config.radial_sum();
  if (!(s > 0.0)) return false;
  const double gauge = static_cast<double>(n) / s;
  for (std::size_t i = 0; i < n; ++i) {
    if (require_off_origin && config.radius(i) * gauge < min_separation) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (config.distance(i, j) * gauge < min_separation) return false;
    }
  }
  return true;
}

void check_separation(const PointConfiguration& config, bool require_off_origin,
                      double min_separation) {
  if (!is_separated(config, require_off_origin, min_separation)) {
    throw DegenerateInputError(require_off_origin
                                   ? "configuration has coincident points or a point at the origin"
                                   : "configuration has coincident points");
  }
}

}  // namespace ionlab
