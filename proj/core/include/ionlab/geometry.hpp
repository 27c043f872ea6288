#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ionlab {

/// Minimum relative separation (pairwise distance or distance to the nucleus,
/// measured in the gauge sum_i |x_i| = N) below which configurations are
/// considered degenerate by functionals that divide by these distances.
inline constexpr double kMinSeparation = 1e-9;

/// N electron positions in R^d, d in {1,2,3}; the nucleus sits at the origin.
///
/// Coordinates are stored point-major in one flat buffer. The type only
/// enforces N >= 1 and finite coordinates; coincident points or points at
/// the origin are representable and rejected later by the functionals that
/// cannot handle them (see check_separation).
class PointConfiguration {
 public:
  PointConfiguration(int dim, std::vector<double> coords);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / static_cast<std::size_t>(dim_); }

  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  std::span<const double> coords() const noexcept { return coords_; }

  /// |x_i|
  double radius(std::size_t i) const noexcept;
  /// |x_i - x_j|
  double distance(std::size_t i, std::size_t j) const noexcept;
  /// sum_i |x_i|
  double radial_sum() const noexcept;

  PointConfiguration scaled(double factor) const;

  friend bool operator==(const PointConfiguration&, const PointConfiguration&) = default;

 private:
  int dim_;
  std::vector<double> coords_;
};

/// Discrete radial probability measure: atoms of mass weights[k] on the
/// sphere of radius radii[k].
class RadialMeasure {
 public:
  /// Throws ConfigurationError unless radii are positive and strictly
  /// increasing, weights are non-negative, and the total mass is 1 within 1e-12.
  RadialMeasure(std::vector<double> radii, std::vector<double> weights);

  /// Builds a measure from non-negative masses of arbitrary (positive) total.
  static RadialMeasure from_masses(std::vector<double> radii, std::vector<double> masses);

  std::size_t size() const noexcept { return radii_.size(); }
  std::span<const double> radii() const noexcept { return radii_; }
  std::span<const double> weights() const noexcept { return weights_; }

  double total_mass() const noexcept;
  double first_moment() const noexcept;

  friend bool operator==(const RadialMeasure&, const RadialMeasure&) = default;

 private:
  std::vector<double> radii_;
  std::vector<double> weights_;
};

/// Dense symmetric N x N matrix of pairwise distances.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

DistanceMatrix pairwise_distances(const PointConfiguration& config);

/// Potential of a radial charge distribution at radius r, by Newton's theorem:
/// sum_k w_k / max(r, r_k). Throws DomainError for r <= 0.
double newton_potential(const RadialMeasure& measure, double r);

/// newton_potential evaluated at every radius of an increasing sequence in
/// O(K + M) using prefix sums.
std::vector<double> newton_potential_profile(const RadialMeasure& measure,
                                             std::span<const double> radii);

/// Rescales so that sum_i |x_i| = N. Throws DegenerateInputError when every
/// point sits at the origin.
PointConfiguration normalize_scale(const PointConfiguration& config);

/// True when, in the normalized gauge, every pairwise distance and (if
/// require_off_origin) every radius is at least min_separation.
bool is_separated(const PointConfiguration& config, bool require_off_origin,
                  double min_separation = kMinSeparation) noexcept;

/// Throws DegenerateInputError if is_separated fails.
void check_separation(const PointConfiguration& config, bool require_off_origin,
                      double min_separation = kMinSeparation);

// Plain-text serialization.
//
// Configuration: first line "dim N", then N lines of dim whitespace-separated
// decimals. Measure: first line "K", then K lines "radius weight". Values are
// written in shortest round-trip form.
void write_configuration(std::ostream& os, const PointConfiguration& config);
PointConfiguration read_configuration(std::istream& is);
std::string to_text(const PointConfiguration& config);
PointConfiguration configuration_from_text(const std::string& text);

void write_measure(std::ostream& os, const RadialMeasure& measure);
RadialMeasure read_measure(std::istream& is);
std::string to_text(const RadialMeasure& measure);
RadialMeasure measure_from_text(const std::string& text);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

}  // namespace ionlab
