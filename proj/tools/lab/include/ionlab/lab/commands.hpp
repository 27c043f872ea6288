#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ionlab/lab/report.hpp"
#include "ionlab/tf_atom.hpp"

namespace ionlab::lab {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitViolation = 1,
  kExitConvergence = 2,
  kExitBadArguments = 3,
};

struct CommonOptions {
  std::uint64_t seed = 0x5EEDULL;
  int jobs = 0;  ///< 0 = hardware concurrency
  std::filesystem::path out_dir = ".";
  OutputFormat format = OutputFormat::Json;
  int restarts = 8;
  double tol = 1e-9;
};

struct CommandResult {
  ExperimentReport report;
  int exit_code = kExitSuccess;
  /// Human-readable verdict lines for stdout.
  std::vector<std::string> messages;
};

/// Rows (N, d, convention, nu, inf_q, restarts, spread, status) for every
/// N x d. d = 1 always gets a full-line row, and a half-line row as well when
/// `half_line` is set.
CommandResult cmd_nu_table(const std::vector<int>& Ns, const std::vector<int>& dims, bool half_line,
                           const CommonOptions& common);

struct BetaGrid {
  double r_min = 1e-2;
  double r_max = 1e2;
  int points = 200;
};

/// Rows (N, v, lower, upper, lower_ok, upper_ok, status), a least-squares
/// fit v(N) = beta_est - c N^(-2/3), and the radial-measure estimate beta_rad.
CommandResult cmd_beta(const std::vector<int>& Ns, const BetaGrid& grid,
                       const CommonOptions& common);

/// Solves the Thomas-Fermi atom, writes tf_solution.csv/.json to out_dir and
/// reports moment checks over k in {2,3,5,10,1000} and R at the grid quartiles.
CommandResult cmd_tf(double Z, double N_target, double gamma, const RadialGridSpec& grid,
                     const CommonOptions& common);

/// Runs one property suite, or every suite for "all". `samples` <= 0 uses the
/// suite default. Counterexamples go to <out_dir>/counterexamples/.
CommandResult cmd_check(const std::string& suite, long long samples, const CommonOptions& common);

/// Rows (Z, theorem, lieb, smaller) for integer Z in [Z_min, Z_max].
CommandResult cmd_bound_table(int Z_min, int Z_max, const CommonOptions& common);

/// Least-squares fit of v = beta - c x over the pairs (x_i, v_i).
Fit fit_linear(const std::vector<double>& x, const std::vector<double>& v);

}  // namespace ionlab::lab
