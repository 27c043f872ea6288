#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>

#include "ionlab/geometry.hpp"

namespace ionlab {

enum class FunctionalTag { SigalExcess, LsstValue, QMinimax, BetaRatio, MeasureRatio };

std::string_view to_string(FunctionalTag tag) noexcept;

/// A functional together with its named scalar parameters.
///
///   SigalExcess  {"Z"}
///   LsstValue    {"epsilon"}
///   QMinimax     {}
///   BetaRatio    {}
///   MeasureRatio {}
class FunctionalKind {
 public:
  /// Throws ConfigurationError unless `params` holds exactly the names
  /// required by `tag`, with Z > 0 and epsilon in (0, 1).
  FunctionalKind(FunctionalTag tag, std::map<std::string, double> params = {});

  static FunctionalKind sigal_excess(double Z) { return {FunctionalTag::SigalExcess, {{"Z", Z}}}; }
  static FunctionalKind lsst_value(double epsilon) {
    return {FunctionalTag::LsstValue, {{"epsilon", epsilon}}};
  }
  static FunctionalKind q_minimax() { return FunctionalKind(FunctionalTag::QMinimax); }
  static FunctionalKind beta_ratio() { return FunctionalKind(FunctionalTag::BetaRatio); }
  static FunctionalKind measure_ratio() { return FunctionalKind(FunctionalTag::MeasureRatio); }

  FunctionalTag tag() const noexcept { return tag_; }
  const std::map<std::string, double>& parameters() const noexcept { return params_; }
  double parameter(const std::string& name) const;

  /// Homogeneous of degree 0 under x -> lambda x.
  bool scale_invariant() const noexcept;
  /// Defined on point configurations (everything except MeasureRatio).
  bool acts_on_configurations() const noexcept { return tag_ != FunctionalTag::MeasureRatio; }

 private:
  FunctionalTag tag_;
  std::map<std::string, double> params_;
};

/// Evaluates a configuration functional. Throws ConfigurationError for MeasureRatio.
double evaluate(const FunctionalKind& kind, const PointConfiguration& config);

/// Index of the point with the largest |x_j|; ties go to the lowest index.
std::size_t farthest_index(const PointConfiguration& config) noexcept;

/// Energy contributed by the farthest electron:
/// -Z/|x_f| + sum_{i != f} 1/|x_i - x_f|.
double sigal_excess(const PointConfiguration& config, double Z);

/// max_j { sum_{i != j} 1/|x_i - x_j| - N (1 - epsilon) / |x_j| }.
double lsst_value(const PointConfiguration& config, double epsilon);

/// Q(X) = max_j |x_j| sum_{i != j} 1/|x_i - x_j|. Zero for N = 1.
/// The classical C-constant inequality holds for X iff Q(X) >= N - C.
double q_minimax(const PointConfiguration& config);

/// sum_{i<j} (|x_i|^2 + |x_j|^2)/|x_i - x_j|  /  ((N-1) sum_i |x_i|).
double beta_ratio(const PointConfiguration& config);

/// Radial kernel (r^2 + s^2) / (2 max(r, s)), the spherical average of
/// (x^2 + y^2) / (2|x - y|).
double radial_beta_kernel(double r, double s) noexcept;

/// sum_{k,l} w_k w_l K(r_k, r_l) / sum_k w_k r_k, diagonal included.
double measure_ratio(const RadialMeasure& measure);

/// (|x| + |y|)/|x - y| - 1, non-negative by the triangle inequality.
double triangle_kernel_check(std::span<const double> x, std::span<const double> y);

/// Pair brackets of the two inequalities for |x| = r, |y| = s, |x - y| = d.
double proof_bracket_A(double r, double s, double d) noexcept;
double proof_bracket_B(double r, double s, double d) noexcept;

/// Off-diagonal discrete gap of the Coulomb-positivity inequality with
/// weights 1/N:
/// sum_{i != j} N^-2 [ (x_i^2 + x_j^2)/|x_i - x_j| - |x_i - x_j| - (2/3) min^2/max ].
double proof_inequality_A(const PointConfiguration& config);

/// Off-diagonal discrete gap of the second inequality with weights 1/N:
/// sum_{i != j} N^-2 [ (x_i^2 + x_j^2)/|x_i - x_j| - max - min^2/|x_i - x_j| ].
double proof_inequality_B(const PointConfiguration& config);

struct IdentitySides {
  double lhs;
  double rhs;
};

/// Spherically averaged inequality A at radii (r, s):
/// lhs = (r^2+s^2)/max, rhs = [max + min^2/(3 max)] + (2/3) min^2/max.
IdentitySides radial_identity_A(double r, double s);

/// Spherically averaged inequality B at radii (r, s):
/// lhs = (r^2+s^2)/max, rhs = max + min^2/max.
IdentitySides radial_identity_B(double r, double s);

/// (r^k + s^k)/max(r,s) - (1 - 1/k)(r^(k-1) + s^(k-1)). Throws DomainError
/// unless r, s > 0 and k > 1.
double elementary_inequality_gap(double r, double s, double k);

/// 1.22 Z + 3 Z^(1/3).
double theorem_bound(double Z);

/// 2 Z + 1.
double lieb_bound(double Z);

}  // namespace ionlab
