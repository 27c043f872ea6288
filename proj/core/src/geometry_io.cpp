#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "ionlab/error.hpp"
#include "ionlab/geometry.hpp"

namespace ionlab {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

template <typename T>
T read_value(std::istream& is, const char* what) {
  T v{};
  if (!(is >> v)) throw ConfigurationError(std::string("malformed input: expected ") + what);
  return v;
}

}  // namespace

void write_configuration(std::ostream& os, const PointConfiguration& config) {
  os << config.dim() << ' ' << config.size() << '\n';
  for (std::size_t i = 0; i < config.size(); ++i) {
    const auto p = config.point(i);
    for (int k = 0; k < config.dim(); ++k) {
      if (k) os << ' ';
      os << format_double(p[k]);
    }
    os << '\n';
  }
}

PointConfiguration read_configuration(std::istream& is) {
  const int dim = read_value<int>(is, "dimension");
  const long n = read_value<long>(is, "point count");
  if (n < 1) throw ConfigurationError("configuration needs N >= 1");
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(dim, 1)));
  for (long i = 0; i < n * dim; ++i) coords.push_back(read_value<double>(is, "coordinate"));
  return PointConfiguration(dim, std::move(coords));
}

std::string to_text(const PointConfiguration& config) {
  std::ostringstream os;
  write_configuration(os, config);
  return os.str();
}

PointConfiguration configuration_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_configuration(is);
}

void write_measure(std::ostream& os, const RadialMeasure& measure) {
  os << measure.size() << '\n';
  for (std::size_t k = 0; k < measure.size(); ++k) {
    os << format_double(measure.radii()[k]) << ' ' << format_double(measure.weights()[k]) << '\n';
  }
}

RadialMeasure read_measure(std::istream& is) {
  const long K = read_value<long>(is, "atom count");
  if (K < 1) throw ConfigurationError("measure needs K >= 1");
  std::vector<double> radii, weights;
  for (long k = 0; k < K; ++k) {
    radii.push_back(read_value<double>(is, "radius"));
    weights.push_back(read_value<double>(is, "weight"));
  }
  return RadialMeasure(std::move(radii), std::move(weights));
}

std::string to_text(const RadialMeasure& measure) {
  std::ostringstream os;
  write_measure(os, measure);
  return os.str();
}

RadialMeasure measure_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_measure(is);
}

}  // namespace ionlab
