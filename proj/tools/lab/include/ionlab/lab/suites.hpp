#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ionlab::lab {

enum class SuiteVerdict { Pass, Fail, Exploratory };

const char* to_string(SuiteVerdict verdict) noexcept;

struct SuiteResult {
  std::string name;
  long long samples = 0;
  long long violations = 0;
  double min_value = 0.0;  ///< smallest sampled margin (gap, excess, ...)
  double tolerance = 0.0;  ///< violation threshold used (margin < -tolerance)
  SuiteVerdict verdict = SuiteVerdict::Pass;
  /// Plain-text reproductions of the first few violations.
  std::vector<std::string> counterexamples;
};

/// Names accepted by run_suite, in the order "all" runs them.
const std::vector<std::string>& suite_names();

/// Default sample count of a suite.
long long default_samples(const std::string& suite);

/// Runs one randomized property suite. samples <= 0 selects the default.
/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(const std::string& suite, long long samples, std::uint64_t seed);

}  // namespace ionlab::lab
