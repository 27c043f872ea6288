#include "ionlab/lab/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "ionlab/error.hpp"
#include "ionlab/functionals.hpp"
#include "ionlab/geometry.hpp"
#include "ionlab/optimizer.hpp"
#include "ionlab/parallel.hpp"
#include "ionlab/random.hpp"
#include "ionlab/lab/suites.hpp"

namespace ionlab::lab {

namespace {

using Clock = std::chrono::steady_clock;

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Both: return "both";
  }
  return "?";
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

ExperimentReport start_report(const std::string& command, const CommonOptions& common) {
  ExperimentReport r;
  r.command = command;
  r.seed = common.seed;
  r.artifact_version = artifact_version();
  return r;
}

void echo_common(ExperimentReport& r, const CommonOptions& common) {
  r.parameters.emplace_back("seed", std::to_string(common.seed));
  r.parameters.emplace_back("jobs", std::to_string(common.jobs));
  r.parameters.emplace_back("out", common.out_dir.string());
  r.parameters.emplace_back("format", format_name(common.format));
  r.parameters.emplace_back("restarts", std::to_string(common.restarts));
  r.parameters.emplace_back("tol", format_double(common.tol));
}

SearchOptions search_options(const CommonOptions& common, std::uint64_t row_seed) {
  SearchOptions opts;
  opts.restarts = common.restarts;
  opts.tolerance = common.tol;
  opts.seed = row_seed;
  opts.jobs = 1;  // rows are the unit of parallelism
  return opts;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Classifies a row failure into a status string and exit code.
std::pair<std::string, int> classify(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const ConvergenceError& err) {
    return {std::string("convergence: ") + err.what(), kExitConvergence};
  } catch (const std::exception& err) {
    return {std::string("error: ") + err.what(), kExitConvergence};
  }
}

}  // namespace

Fit fit_linear(const std::vector<double>& x, const std::vector<double>& v) {
  if (x.size() != v.size() || x.size() < 2) {
    throw ConfigurationError("fit needs at least two points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sv = 0, sxx = 0, sxv = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sv += v[i];
    sxx += x[i] * x[i];
    sxv += x[i] * v[i];
  }
  const double det = n * sxx - sx * sx;
  if (!(std::abs(det) > 0.0)) throw ConfigurationError("fit needs two distinct abscissae");
  const double slope = (n * sxv - sx * sv) / det;
  Fit f;
  f.beta_est = (sv - slope * sx) / n;
  f.c_est = -slope;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = v[i] - (f.beta_est - f.c_est * x[i]);
    ss += e * e;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

CommandResult cmd_nu_table(const std::vector<int>& Ns, const std::vector<int>& dims, bool half_line,
                           const CommonOptions& common) {
  for (int N : Ns) {
    if (N < 2 || N > 200) throw ConfigurationError("N must lie in [2, 200]");
  }
  for (int d : dims) {
    if (d < 1 || d > 3) throw ConfigurationError("d must be 1, 2 or 3");
  }
  const auto t0 = Clock::now();
  CommandResult out;
  auto& r = out.report = start_report("nu-table", common);
  r.parameters.emplace_back("N", join(Ns));
  r.parameters.emplace_back("d", join(dims));
  r.parameters.emplace_back("half_line", half_line ? "true" : "false");
  echo_common(r, common);
  r.columns = {"N", "d", "convention", "nu", "inf_q", "restarts", "spread", "status"};

  struct Row {
    int N, d;
    bool half;
  };
  std::vector<Row> rows;
  for (int N : Ns) {
    for (int d : dims) {
      rows.push_back({N, d, false});
      if (d == 1 && half_line) rows.push_back({N, d, true});
    }
  }
  std::vector<std::vector<Cell>> cells(rows.size());
  std::vector<int> codes(rows.size(), kExitSuccess);
  detail::parallel_for(static_cast<int>(rows.size()), common.jobs, [&](int i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    const char* conv = row.d == 1 ? (row.half ? "half-line" : "full-line") : "space";
    auto& c = cells[static_cast<std::size_t>(i)];
    try {
      const auto opts = search_options(common, derive_seed(common.seed, static_cast<std::uint64_t>(i)));
      const auto est = estimate_nu(row.N, row.d, row.half, opts);
      c = {static_cast<long long>(row.N), static_cast<long long>(row.d), std::string(conv), est.nu,
           est.inf_q, static_cast<long long>(est.result.restarts), est.spread, std::string("ok")};
    } catch (...) {
      auto [status, code] = classify(std::current_exception());
      codes[static_cast<std::size_t>(i)] = code;
      c = {static_cast<long long>(row.N), static_cast<long long>(row.d), std::string(conv),
           std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{}, status};
    }
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    r.add_row(std::move(cells[i]));
    out.exit_code = std::max(out.exit_code, codes[i]);
  }
  r.wall_time = seconds_since(t0);
  return out;
}

CommandResult cmd_beta(const std::vector<int>& Ns, const BetaGrid& grid,
                       const CommonOptions& common) {
  for (int N : Ns) {
    if (N < 2 || N > 128) throw ConfigurationError("N must lie in [2, 128]");
  }
  if (!(grid.r_min > 0.0) || !(grid.r_max > grid.r_min) || grid.points < 1) {
    throw ConfigurationError("radial grid needs 0 < r_min < r_max and points >= 1");
  }
  constexpr double kTolerance = 0.02;
  constexpr double kSandwich = 1.55;
  constexpr double kFloor = 0.82;
  constexpr double kAgreement = 0.05;

  const auto t0 = Clock::now();
  CommandResult out;
  auto& r = out.report = start_report("beta", common);
  r.parameters.emplace_back("N", join(Ns));
  r.parameters.emplace_back("r_min", format_double(grid.r_min));
  r.parameters.emplace_back("r_max", format_double(grid.r_max));
  r.parameters.emplace_back("points", std::to_string(grid.points));
  echo_common(r, common);
  r.columns = {"N", "v", "lower", "upper", "lower_ok", "upper_ok", "status"};

  // Task 0 is the radial-measure search, tasks 1..n the point configurations.
  const int tasks = static_cast<int>(Ns.size()) + 1;
  std::vector<double> values(Ns.size(), NAN);
  std::vector<std::string> status(Ns.size(), "ok");
  std::vector<int> codes(Ns.size(), kExitSuccess);
  double beta_rad = NAN;
  std::string rad_status = "ok";
  detail::parallel_for(tasks, common.jobs, [&](int t) {
    const auto opts = search_options(common, derive_seed(common.seed, static_cast<std::uint64_t>(t)));
    if (t == 0) {
      try {
        std::vector<double> radii(static_cast<std::size_t>(grid.points));
        const double lo = std::log(grid.r_min), hi = std::log(grid.r_max);
        for (int k = 0; k < grid.points; ++k) {
          radii[static_cast<std::size_t>(k)] =
              grid.points == 1 ? grid.r_min : std::exp(lo + (hi - lo) * k / (grid.points - 1));
        }
        beta_rad = minimize_measure_ratio(radii, opts).best_value;
      } catch (...) {
        rad_status = classify(std::current_exception()).first;
      }
      return;
    }
    const auto i = static_cast<std::size_t>(t - 1);
    try {
      values[i] = minimize_config(FunctionalKind::beta_ratio(), Ns[i], 3, opts).best_value;
    } catch (...) {
      std::tie(status[i], codes[i]) = classify(std::current_exception());
    }
  });

  std::vector<double> xs, vs;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    out.exit_code = std::max(out.exit_code, codes[i]);
    if (std::isfinite(values[i])) {
      xs.push_back(std::pow(static_cast<double>(Ns[i]), -2.0 / 3.0));
      vs.push_back(values[i]);
    }
  }
  std::optional<Fit> fit;
  try {
    fit = fit_linear(xs, vs);
  } catch (const std::exception& e) {
    out.messages.push_back(std::string("fit skipped: ") + e.what());
  }
  r.fit = fit;

  bool all_ok = true;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    std::vector<Cell> row{static_cast<long long>(Ns[i])};
    if (!std::isfinite(values[i])) {
      row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                             std::monostate{}, status[i]});
      r.add_row(std::move(row));
      continue;
    }
    Cell lower, upper, lower_ok, upper_ok;
    if (fit) {
      const double lo = fit->beta_est - kSandwich * std::pow(static_cast<double>(Ns[i]), -2.0 / 3.0);
      lower = lo;
      lower_ok = values[i] >= lo - kTolerance;
      all_ok = all_ok && values[i] >= lo - kTolerance;
    }
    if (std::isfinite(beta_rad)) {
      upper = beta_rad;
      upper_ok = values[i] <= beta_rad + kTolerance;
      all_ok = all_ok && values[i] <= beta_rad + kTolerance;
    }
    row.insert(row.end(), {values[i], lower, upper, lower_ok, upper_ok, status[i]});
    r.add_row(std::move(row));
  }

  r.summary.emplace_back("beta_rad", std::isfinite(beta_rad) ? Cell(beta_rad) : Cell(std::monostate{}));
  r.summary.emplace_back("beta_rad_status", rad_status);
  if (fit) {
    const bool floor_ok = fit->beta_est >= kFloor - kTolerance;
    r.summary.emplace_back("beta_floor_ok", floor_ok);
    all_ok = all_ok && floor_ok;
    out.messages.push_back("beta_est = " + format_double(fit->beta_est) +
                           "  c_est = " + format_double(fit->c_est));
    if (std::isfinite(beta_rad)) {
      const bool agree = std::abs(fit->beta_est - beta_rad) <= kAgreement;
      r.summary.emplace_back("agreement_ok", agree);
      all_ok = all_ok && agree;
    }
  }
  if (std::isfinite(beta_rad)) out.messages.push_back("beta_rad = " + format_double(beta_rad));
  r.summary.emplace_back("consistent", all_ok);
  out.messages.push_back(std::string("beta consistency: ") + (all_ok ? "PASS" : "FAIL"));
  if (rad_status != "ok" || !fit) out.exit_code = std::max<int>(out.exit_code, kExitConvergence);
  if (!all_ok && out.exit_code == kExitSuccess) out.exit_code = kExitViolation;
  r.wall_time = seconds_since(t0);
  return out;
}

CommandResult cmd_tf(double Z, double N_target, double gamma, const RadialGridSpec& grid,
                     const CommonOptions& common) {
  const auto t0 = Clock::now();
  CommandResult out;
  auto& r = out.report = start_report("tf", common);
  r.parameters.emplace_back("Z", format_double(Z));
  r.parameters.emplace_back("N_target", format_double(N_target));
  r.parameters.emplace_back("gamma", format_double(gamma));
  r.parameters.emplace_back("r_min", format_double(grid.r_min));
  r.parameters.emplace_back("r_max", format_double(grid.r_max));
  r.parameters.emplace_back("points", std::to_string(grid.points));
  r.parameters.emplace_back("scale_with_Z", grid.scale_with_Z ? "true" : "false");
  echo_common(r, common);
  r.columns = {"k", "R", "lhs", "rhs", "ok"};

  TFSolution sol;
  try {
    sol = solve_tf(Z, N_target, gamma, grid);
  } catch (const ConvergenceError& e) {
    out.exit_code = kExitConvergence;
    out.messages.push_back(std::string("convergence failure: ") + e.what());
    r.summary.emplace_back("status", std::string("convergence: ") + e.what());
    r.wall_time = seconds_since(t0);
    return out;
  }

  std::filesystem::create_directories(common.out_dir);
  {
    std::ofstream csv(common.out_dir / "tf_solution.csv");
    write_tf_csv(csv, sol);
    std::ofstream side(common.out_dir / "tf_solution.json");
    write_tf_sidecar(side, sol);
    if (!csv || !side) throw std::runtime_error("cannot write Thomas-Fermi solution files");
  }

  bool moments_ok = true;
  const std::size_t K = sol.grid.size();
  for (double k : {2.0, 3.0, 5.0, 10.0, 1000.0}) {
    for (std::size_t q = 1; q <= 4; ++q) {
      const double R = sol.grid[q * (K - 1) / 4];
      const auto m = moment_check(sol, k, R);
      moments_ok = moments_ok && m.ok;
      r.add_row({k, R, m.lhs, m.rhs, m.ok});
    }
  }
  const bool bound_ok = sol.total_charge <= Z + 1e-4 * Z;
  r.summary.emplace_back("mu", sol.mu);
  r.summary.emplace_back("total_charge", sol.total_charge);
  r.summary.emplace_back("charge_ratio", sol.total_charge / Z);
  r.summary.emplace_back("residual", sol.residual);
  r.summary.emplace_back("iterations", static_cast<long long>(sol.iterations));
  r.summary.emplace_back("bisections", static_cast<long long>(sol.bisections));
  r.summary.emplace_back("moments_ok", moments_ok);
  r.summary.emplace_back("ionization_bound_ok", bound_ok);
  r.summary.emplace_back("status", std::string("ok"));
  out.messages.push_back(std::string("ionization bound ∫ρ ≤ Z: ") +
                         (bound_ok && moments_ok ? "PASS" : "FAIL"));
  if (!(bound_ok && moments_ok)) out.exit_code = kExitViolation;
  r.wall_time = seconds_since(t0);
  return out;
}

CommandResult cmd_check(const std::string& suite, long long samples, const CommonOptions& common) {
  const auto& names = suite_names();
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (suite == "all" || suite == names[i]) selected.push_back(i);
  }
  if (selected.empty()) throw ConfigurationError("unknown suite: " + suite);

  const auto t0 = Clock::now();
  CommandResult out;
  auto& r = out.report = start_report("check", common);
  r.parameters.emplace_back("suite", suite);
  r.parameters.emplace_back("samples", std::to_string(samples));
  echo_common(r, common);
  r.columns = {"suite", "samples", "violations", "min_value", "tolerance", "verdict", "status"};

  // Seeds follow the global suite index so "all" and a single suite agree.
  std::vector<SuiteResult> results(selected.size());
  std::vector<std::string> status(selected.size(), "ok");
  detail::parallel_for(static_cast<int>(selected.size()), common.jobs, [&](int t) {
    const auto i = static_cast<std::size_t>(t);
    try {
      results[i] = run_suite(names[selected[i]], samples, derive_seed(common.seed, selected[i]));
    } catch (const std::exception& e) {
      status[i] = std::string("error: ") + e.what();
    }
  });

  const auto dir = common.out_dir / "counterexamples";
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const auto& s = results[i];
    const auto& name = names[selected[i]];
    if (status[i] != "ok") {
      r.add_row({name, std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                 std::monostate{}, status[i]});
      out.exit_code = std::max<int>(out.exit_code, kExitConvergence);
      continue;
    }
    const bool exploratory = s.verdict == SuiteVerdict::Exploratory;
    r.add_row({name, static_cast<long long>(s.samples), static_cast<long long>(s.violations),
               s.min_value, exploratory ? Cell(std::monostate{}) : Cell(s.tolerance),
               std::string(to_string(s.verdict)), status[i]});
    out.messages.push_back(name + ": " + to_string(s.verdict) + " (" + std::to_string(s.violations) +
                           " violations, min " + format_double(s.min_value) + ")");
    if (s.verdict == SuiteVerdict::Fail) out.exit_code = std::max<int>(out.exit_code, kExitViolation);
    for (std::size_t c = 0; c < s.counterexamples.size(); ++c) {
      std::filesystem::create_directories(dir);
      const auto stem = exploratory ? name + "_minimum" : name + "_" + std::to_string(c);
      std::ofstream f(dir / (stem + ".txt"));
      f << "# suite " << name << " seed " << common.seed << "\n" << s.counterexamples[c];
    }
  }
  r.wall_time = seconds_since(t0);
  return out;
}

CommandResult cmd_bound_table(int Z_min, int Z_max, const CommonOptions& common) {
  if (Z_min < 1 || Z_max < Z_min) throw ConfigurationError("need 1 <= Z_min <= Z_max");
  const auto t0 = Clock::now();
  CommandResult out;
  auto& r = out.report = start_report("bound-table", common);
  r.parameters.emplace_back("Z_min", std::to_string(Z_min));
  r.parameters.emplace_back("Z_max", std::to_string(Z_max));
  echo_common(r, common);
  r.columns = {"Z", "theorem", "lieb", "smaller"};

  // Crossover: smallest Z from which the theorem bound stays strictly below.
  std::optional<int> crossover;
  for (int Z = Z_min; Z <= Z_max; ++Z) {
    const double t = theorem_bound(Z), l = lieb_bound(Z);
    const bool theorem_wins = t < l;
    r.add_row({static_cast<long long>(Z), t, l, std::string(theorem_wins ? "theorem" : "lieb")});
    if (!theorem_wins) {
      crossover.reset();
    } else if (!crossover) {
      crossover = Z;
    }
  }
  r.summary.emplace_back("crossover_Z",
                         crossover ? Cell(static_cast<long long>(*crossover)) : Cell(std::monostate{}));
  out.messages.push_back(crossover ? "crossover at Z = " + std::to_string(*crossover)
                                   : std::string("no crossover in range"));
  r.wall_time = seconds_since(t0);
  return out;
}

}  // namespace ionlab::lab
