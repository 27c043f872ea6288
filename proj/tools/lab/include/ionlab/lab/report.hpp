#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ionlab::lab {

/// One table cell. monostate renders as null (JSON) / empty (CSV).
using Cell = std::variant<std::monostate, bool, long long, double, std::string>;

struct Fit {
  double beta_est = 0.0;
  double c_est = 0.0;
  double residual = 0.0;
};

struct ExperimentReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;  ///< full echo, in flag order
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> records;  ///< each row aligned with `columns`
  std::optional<Fit> fit;                  ///< beta command only
  std::vector<std::pair<std::string, Cell>> summary;
  std::uint64_t seed = 0;
  double wall_time = 0.0;  ///< seconds
  std::string artifact_version;

  void add_row(std::vector<Cell> row);
  const Cell& at(std::size_t row, const std::string& column) const;
  const Cell* summary_value(const std::string& key) const;
};

enum class OutputFormat { Json, Csv, Both };

OutputFormat parse_format(const std::string& name);

std::string to_json(const ExperimentReport& report);
/// Header row of column names, then one line per record.
std::string to_csv(const ExperimentReport& report);

/// Writes <dir>/<stem>.json and/or <dir>/<stem>.csv; returns the written paths.
std::vector<std::filesystem::path> write_report(const ExperimentReport& report,
                                                const std::filesystem::path& dir,
                                                OutputFormat format,
                                                const std::string& stem = {});

/// Value equality of two reports ignoring wall_time.
bool same_results(const ExperimentReport& a, const ExperimentReport& b);

double as_double(const Cell& cell);

const char* artifact_version() noexcept;

}  // namespace ionlab::lab
