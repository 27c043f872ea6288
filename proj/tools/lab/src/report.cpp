#include "ionlab/lab/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ionlab/geometry.hpp"

#ifndef IONLAB_VERSION
#define IONLAB_VERSION "0.0.0"
#endif

namespace ionlab::lab {

const char* artifact_version() noexcept { return IONLAB_VERSION; }

void ExperimentReport::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match columns");
  records.push_back(std::move(row));
}

const Cell& ExperimentReport::at(std::size_t row, const std::string& column) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == column) return records.at(row).at(c);
  }
  throw std::out_of_range("no column " + column);
}

const Cell* ExperimentReport::summary_value(const std::string& key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return &v;
  }
  return nullptr;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "both") return OutputFormat::Both;
  throw std::invalid_argument("format must be json, csv or both");
}

double as_double(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  if (const auto* i = std::get_if<long long>(&cell)) return static_cast<double>(*i);
  if (const auto* b = std::get_if<bool>(&cell)) return *b ? 1.0 : 0.0;
  throw std::invalid_argument("cell is not numeric");
}

namespace {

using json = nlohmann::ordered_json;

json cell_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          // JSON has no inf/nan; keep them as strings so CSV and JSON agree.
          if (!std::isfinite(v)) return format_double(v);
          return v;
        } else {
          return v;
        }
      },
      cell);
}

std::string cell_csv(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string quoted = "\"";
          for (char c : v) {
            if (c == '"') quoted += '"';
            quoted += c;
          }
          return quoted + "\"";
        }
      },
      cell);
}

}  // namespace

std::string to_json(const ExperimentReport& report) {
  json j;
  j["command"] = report.command;
  j["artifact_version"] = report.artifact_version;
  j["seed"] = report.seed;
  j["wall_time"] = report.wall_time;
  json params = json::object();
  for (const auto& [k, v] : report.parameters) params[k] = v;
  j["parameters"] = params;
  json records = json::array();
  for (const auto& row : report.records) {
    json r = json::object();
    for (std::size_t c = 0; c < report.columns.size(); ++c) r[report.columns[c]] = cell_json(row[c]);
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  if (report.fit) {
    j["fit"] = {{"beta_est", report.fit->beta_est},
                {"c_est", report.fit->c_est},
                {"residual", report.fit->residual}};
  }
  json summary = json::object();
  for (const auto& [k, v] : report.summary) summary[k] = cell_json(v);
  j["summary"] = std::move(summary);
  return j.dump(2) + "\n";
}

std::string to_csv(const ExperimentReport& report) {
  std::ostringstream os;
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    if (c) os << ',';
    os << report.columns[c];
  }
  os << '\n';
  for (const auto& row : report.records) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      os << cell_csv(row[c]);
    }
    os << '\n';
  }
  return os.str();
}

std::vector<std::filesystem::path> write_report(const ExperimentReport& report,
                                                const std::filesystem::path& dir,
                                                OutputFormat format, const std::string& stem) {
  std::filesystem::create_directories(dir);
  const std::string base = stem.empty() ? report.command : stem;
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& ext, const std::string& body) {
    const auto path = dir / (base + ext);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << body;
    written.push_back(path);
  };
  if (format != OutputFormat::Csv) emit(".json", to_json(report));
  if (format != OutputFormat::Json) emit(".csv", to_csv(report));
  return written;
}

bool same_results(const ExperimentReport& a, const ExperimentReport& b) {
  auto fit_equal = [](const std::optional<Fit>& x, const std::optional<Fit>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->beta_est == y->beta_est && x->c_est == y->c_est && x->residual == y->residual);
  };
  return a.command == b.command && a.parameters == b.parameters && a.columns == b.columns &&
         a.records == b.records && fit_equal(a.fit, b.fit) && a.summary == b.summary &&
         a.seed == b.seed && a.artifact_version == b.artifact_version;
}

}  // namespace ionlab::lab
