#include "ionlab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ionlab/error.hpp"

namespace ionlab {

std::string_view to_string(FunctionalTag tag) noexcept {
  switch (tag) {
    case FunctionalTag::SigalExcess: return "SigalExcess";
    case FunctionalTag::LsstValue: return "LsstValue";
    case FunctionalTag::QMinimax: return "QMinimax";
    case FunctionalTag::BetaRatio: return "BetaRatio";
    case FunctionalTag::MeasureRatio: return "MeasureRatio";
  }
  return "Unknown";
}

FunctionalKind::FunctionalKind(FunctionalTag tag, std::map<std::string, double> params)
    : tag_(tag), params_(std::move(params)) {
  std::set<std::string> required;
  if (tag_ == FunctionalTag::SigalExcess) required = {"Z"};
  if (tag_ == FunctionalTag::LsstValue) required = {"epsilon"};

  std::set<std::string> given;
  for (const auto& [name, value] : params_) given.insert(name);
  if (given != required) {
    throw ConfigurationError(std::string("wrong parameter set for ") +
                             std::string(to_string(tag_)));
  }
  if (auto it = params_.find("Z"); it != params_.end() && !(it->second > 0.0)) {
    throw ConfigurationError("Z must be positive");
  }
  if (auto it = params_.find("epsilon");
      it != params_.end() && !(it->second > 0.0 && it->second < 1.0)) {
    throw ConfigurationError("epsilon must lie in (0, 1)");
  }
}

double FunctionalKind::parameter(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw ConfigurationError("missing parameter " + name);
  return it->second;
}

bool FunctionalKind::scale_invariant() const noexcept {
  return tag_ == FunctionalTag::QMinimax || tag_ == FunctionalTag::BetaRatio ||
         tag_ == FunctionalTag::MeasureRatio;
}

double evaluate(const FunctionalKind& kind, const PointConfiguration& config) {
  switch (kind.tag()) {
    case FunctionalTag::SigalExcess: return sigal_excess(config, kind.parameter("Z"));
    case FunctionalTag::LsstValue: return lsst_value(config, kind.parameter("epsilon"));
    case FunctionalTag::QMinimax: return q_minimax(config);
    case FunctionalTag::BetaRatio: return beta_ratio(config);
    case FunctionalTag::MeasureRatio: break;
  }
  throw ConfigurationError("MeasureRatio is not a configuration functional");
}

std::size_t farthest_index(const PointConfiguration& config) noexcept {
  std::size_t best = 0;
  double best_r = config.radius(0);
  for (std::size_t i = 1; i < config.size(); ++i) {
    const double r = config.radius(i);
    if (r > best_r) {
      best_r = r;
      best = i;
    }
  }
  return best;
}

namespace {

void require_pairs(const PointConfiguration& config, const char* who) {
  if (config.size() < 2) throw ConfigurationError(std::string(who) + " requires N >= 2");
}

double repulsion_at(const PointConfiguration& config, std::size_t j) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (i != j) s += 1.0 / config.distance(i, j);
  }
  return s;
}

}  // namespace

double sigal_excess(const PointConfiguration& config, double Z) {
  require_pairs(config, "sigal_excess");
  if (!(Z > 0.0)) throw DomainError("sigal_excess requires Z > 0");
  check_separation(config, true);
  const std::size_t f = farthest_index(config);
  return -Z / config.radius(f) + repulsion_at(config, f);
}

double lsst_value(const PointConfiguration& config, double epsilon) {
  require_pairs(config, "lsst_value");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("lsst_value requires epsilon in (0,1)");
  check_separation(config, true);
  const double n = static_cast<double>(config.size());
  const double charge = n * (1.0 - epsilon);
  double best = -INFINITY;
  for (std::size_t j = 0; j < config.size(); ++j) {
    const double t = repulsion_at(config, j) - charge / config.radius(j);
    if (t > best) best = t;
  }
  return best;
}

double q_minimax(const PointConfiguration& config) {
  check_separation(config, true);
  double best = 0.0;
  for (std::size_t j = 0; j < config.size(); ++j) {
    best = std::max(best, config.radius(j) * repulsion_at(config, j));
  }
  return best;
}

double beta_ratio(const PointConfiguration& config) {
  require_pairs(config, "beta_ratio");
  check_separation(config, false);
  const std::size_t n = config.size();
  std::vector<double> r2(n);
  double radial = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = config.radius(i);
    r2[i] = r * r;
    radial += r;
  }
  double num = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) num += (r2[i] + r2[j]) / config.distance(i, j);
  }
  return num / (static_cast<double>(n - 1) * radial);
}

double radial_beta_kernel(double r, double s) noexcept {
  return (r * r + s * s) / (2.0 * std::max(r, s));
}

double measure_ratio(const RadialMeasure& measure) {
  const double moment = measure.first_moment();
  if (!(moment > 0.0)) throw DegenerateInputError("measure_ratio: zero first moment");
  const auto r = measure.radii();
  const auto w = measure.weights();
  // Radii are sorted, so for l < k the kernel is (r_k^2 + r_l^2)/(2 r_k).
  double mass_below = 0.0;
  double second_moment_below = 0.0;
  double num = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    num += w[k] * w[k] * r[k];
    num += (w[k] / r[k]) * (r[k] * r[k] * mass_below + second_moment_below);
    mass_below += w[k];
    second_moment_below += w[k] * r[k] * r[k];
  }
  return num / moment;
}

double triangle_kernel_check(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ConfigurationError("triangle_kernel_check: dimension mismatch");
  double nx = 0.0, ny = 0.0, d = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    nx += x[k] * x[k];
    ny += y[k] * y[k];
    d += (x[k] - y[k]) * (x[k] - y[k]);
  }
  if (!(d > 0.0)) throw DomainError("triangle_kernel_check requires x != y");
  return (std::sqrt(nx) + std::sqrt(ny)) / std::sqrt(d) - 1.0;
}

namespace {

template <typename Bracket>
double offdiagonal_gap(const PointConfiguration& config, Bracket bracket) {
  require_pairs(config, "proof inequality");
  check_separation(config, true);
  const std::size_t n = config.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ri = config.radius(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double rj = config.radius(j);
      sum += bracket(ri, rj, config.distance(i, j));
    }
  }
  const double nn = static_cast<double>(n);
  return 2.0 * sum / (nn * nn);
}

}  // namespace

double proof_bracket_A(double r, double s, double d) noexcept {
  const double hi = std::max(r, s), lo = std::min(r, s);
  return (r * r + s * s) / d - d - (2.0 / 3.0) * lo * lo / hi;
}

double proof_bracket_B(double r, double s, double d) noexcept {
  const double hi = std::max(r, s), lo = std::min(r, s);
  return (r * r + s * s) / d - hi - lo * lo / d;
}

double proof_inequality_A(const PointConfiguration& config) {
  return offdiagonal_gap(config, proof_bracket_A);
}

double proof_inequality_B(const PointConfiguration& config) {
  return offdiagonal_gap(config, proof_bracket_B);
}

IdentitySides radial_identity_A(double r, double s) {
  if (!(r > 0.0 && s > 0.0)) throw DomainError("radial identity requires r, s > 0");
  const double hi = std::max(r, s), lo = std::min(r, s);
  return {(r * r + s * s) / hi, (hi + lo * lo / (3.0 * hi)) + (2.0 / 3.0) * lo * lo / hi};
}

IdentitySides radial_identity_B(double r, double s) {
  if (!(r > 0.0 && s > 0.0)) throw DomainError("radial identity requires r, s > 0");
  const double hi = std::max(r, s), lo = std::min(r, s);
  return {(r * r + s * s) / hi, hi + lo * lo / hi};
}

double elementary_inequality_gap(double r, double s, double k) {
  if (!(r > 0.0 && s > 0.0)) throw DomainError("elementary inequality requires r, s > 0");
  if (!(k > 1.0)) throw DomainError("elementary inequality requires k > 1");
  const double lhs = (std::pow(r, k) + std::pow(s, k)) / std::max(r, s);
  return lhs - (1.0 - 1.0 / k) * (std::pow(r, k - 1.0) + std::pow(s, k - 1.0));
}

double theorem_bound(double Z) {
  if (!(Z > 0.0)) throw DomainError("theorem_bound requires Z > 0");
  return 1.22 * Z + 3.0 * std::cbrt(Z);
}

double lieb_bound(double Z) {
  if (!(Z > 0.0)) throw DomainError("lieb_bound requires Z > 0");
  return 2.0 * Z + 1.0;
}

}  // namespace ionlab
