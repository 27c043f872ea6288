#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ionlab/error.hpp"
#include "ionlab/lab/commands.hpp"
#include "ionlab/lab/config.hpp"

namespace lab = ionlab::lab;

namespace {

struct CommonFlags {
  lab::CommonOptions options;
  std::string format = "json";
  std::string config;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seed", f.options.seed, "master RNG seed");
  cmd->add_option("--jobs", f.options.jobs, "worker threads (0 = all processors)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", f.options.out_dir, "output directory");
  cmd->add_option("--format", f.format, "json, csv or both")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  cmd->add_option("--restarts", f.options.restarts, "optimizer restarts per row")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", f.options.tol, "relative convergence tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--config", f.config, "flat key = value file; flags override it");
}

// Returns argv with entries from --config appended for flags not given.
std::vector<std::string> with_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
    } else {
      continue;
    }
    auto entries = lab::read_config(path);
    std::erase_if(entries, [](const auto& e) { return e.first == "config"; });
    return lab::merge_config(std::move(args), entries);
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ionlab: numerical experiments on classical ionization quantities"};
  app.require_subcommand(1);
  CommonFlags common;

  auto* nu = app.add_subcommand("nu-table", "nu(N, d) = N - inf Q over N-point configurations");
  std::string nu_N = "2-30", nu_dims = "1,2,3";
  bool half_line = false;
  nu->add_option("--N", nu_N, "N values, e.g. 2-10 or 2,4,8");
  nu->add_option("--dims", nu_dims, "dimensions, subset of 1,2,3");
  nu->add_flag("--half-line", half_line, "add half-line rows for d = 1");
  add_common(nu, common);

  auto* beta = app.add_subcommand("beta", "beta estimates from point configurations and radial measures");
  std::string beta_N = "8,16,32,64";
  lab::BetaGrid beta_grid;
  beta->add_option("--N", beta_N, "N values");
  beta->add_option("--r-min", beta_grid.r_min, "smallest grid radius");
  beta->add_option("--r-max", beta_grid.r_max, "largest grid radius");
  beta->add_option("--points", beta_grid.points, "radial grid points");
  add_common(beta, common);

  auto* tf = app.add_subcommand("tf", "radial Thomas-Fermi atom and moment checks");
  double Z = 0.0, gamma = 0.0, N_target = NAN;
  ionlab::RadialGridSpec tf_grid;
  bool no_scale = false;
  tf->add_option("--Z", Z, "nuclear charge")->required()->check(CLI::PositiveNumber);
  tf->add_option("--gamma", gamma, "kinetic constant")->required()->check(CLI::PositiveNumber);
  tf->add_option("--N", N_target, "target electron number (default Z)");
  tf->add_option("--r-min", tf_grid.r_min, "smallest grid radius");
  tf->add_option("--r-max", tf_grid.r_max, "largest grid radius");
  tf->add_option("--points", tf_grid.points, "grid points");
  tf->add_flag("--no-scale", no_scale, "do not scale the grid by Z^(-1/3)");
  add_common(tf, common);

  auto* check = app.add_subcommand("check", "randomized property suites");
  std::string suite = "all";
  long long samples = 0;
  check->add_option("--suite", suite, "suite name or all");
  check->add_option("--samples", samples, "samples (0 = suite default)");
  add_common(check, common);

  auto* bounds = app.add_subcommand("bound-table", "1.22Z + 3Z^(1/3) against 2Z + 1");
  int Z_min = 1, Z_max = 20;
  bounds->add_option("--Z-min", Z_min, "first Z");
  bounds->add_option("--Z-max", Z_max, "last Z");
  add_common(bounds, common);

  std::vector<std::string> args;
  try {
    args = with_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lab::kExitBadArguments;
  }
  std::vector<char*> cargs;
  for (auto& a : args) cargs.push_back(a.data());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? lab::kExitSuccess : lab::kExitBadArguments;
  }

  lab::CommandResult result;
  try {
    common.options.format = lab::parse_format(common.format);
    if (*nu) {
      result = lab::cmd_nu_table(lab::parse_int_list(nu_N), lab::parse_int_list(nu_dims), half_line,
                                 common.options);
    } else if (*beta) {
      result = lab::cmd_beta(lab::parse_int_list(beta_N), beta_grid, common.options);
    } else if (*tf) {
      tf_grid.scale_with_Z = !no_scale;
      result = lab::cmd_tf(Z, std::isnan(N_target) ? Z : N_target, gamma, tf_grid, common.options);
    } else if (*check) {
      result = lab::cmd_check(suite, samples, common.options);
    } else {
      result = lab::cmd_bound_table(Z_min, Z_max, common.options);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lab::kExitBadArguments;
  } catch (const ionlab::ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return lab::kExitConvergence;
  }

  for (const auto& m : result.messages) std::cout << m << "\n";
  try {
    for (const auto& p : lab::write_report(result.report, common.options.out_dir, common.options.format)) {
      std::cout << "wrote " << p.string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lab::kExitBadArguments;
  }
  return result.exit_code;
}
