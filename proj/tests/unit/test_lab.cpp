#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ionlab/lab/commands.hpp"
#include "ionlab/lab/config.hpp"
#include "ionlab/lab/suites.hpp"

using namespace ionlab::lab;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ionlab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

CommonOptions quick_options(const fs::path& dir) {
  CommonOptions o;
  o.out_dir = dir;
  o.restarts = 3;
  o.jobs = 2;
  return o;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          cell += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(IONLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Report, CsvAndJsonCarryIdenticalValues) {
  ExperimentReport r;
  r.command = "demo";
  r.columns = {"a", "b", "c", "d", "e"};
  r.add_row({1LL, 0.1, std::string("x,\"y\""), true, std::monostate{}});
  r.add_row({-7LL, 1.0 / 3.0, std::string("plain"), false, 2.5e-300});
  EXPECT_THROW(r.add_row({1LL}), std::logic_error);

  const auto j = nlohmann::json::parse(to_json(r));
  const auto rows = parse_csv(to_csv(r));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], r.columns);
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const auto& rec = j["records"][i];
    const auto& row = rows[i + 1];
    EXPECT_EQ(std::stoll(row[0]), rec["a"].get<long long>());
    EXPECT_EQ(std::stod(row[1]), rec["b"].get<double>());
    EXPECT_EQ(row[2], rec["c"].get<std::string>());
    EXPECT_EQ(row[3] == "true", rec["d"].get<bool>());
    if (rec["e"].is_null()) {
      EXPECT_EQ(row[4], "");
    } else {
      EXPECT_EQ(std::stod(row[4]), rec["e"].get<double>());
    }
  }
  EXPECT_EQ(parse_format("both"), OutputFormat::Both);
  EXPECT_THROW(parse_format("xml"), std::invalid_argument);
}

TEST(Report, WritesFilesAndEchoesVersion) {
  const auto dir = scratch_dir("report");
  auto res = cmd_bound_table(1, 10, quick_options(dir));
  const auto paths = write_report(res.report, dir, OutputFormat::Both);
  ASSERT_EQ(paths.size(), 2u);
  std::ifstream in(dir / "bound-table.json");
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["artifact_version"], artifact_version());
  EXPECT_EQ(j["parameters"]["Z_max"], "10");
  EXPECT_EQ(j["parameters"]["seed"], std::to_string(res.report.seed));
  EXPECT_FALSE(j.contains("fit"));
}

TEST(Config, ParseAndMerge) {
  const auto entries = parse_config("# comment\n\nseed = 42\n--jobs=3\nhalf-line = true\nx = false\n");
  ASSERT_EQ(entries.size(), 4u);
  EXPECT_EQ(entries[0], (std::pair<std::string, std::string>{"seed", "42"}));
  EXPECT_EQ(entries[1].first, "jobs");
  const auto merged = merge_config({"ionlab", "nu-table", "--seed", "7"}, entries);
  EXPECT_EQ(merged, (std::vector<std::string>{"ionlab", "nu-table", "--seed", "7", "--jobs", "3",
                                              "--half-line"}));
  EXPECT_THROW(parse_config("no equals sign\n"), std::invalid_argument);
  EXPECT_THROW(read_config("/nonexistent/ionlab.cfg"), std::invalid_argument);
}

TEST(Config, IntegerLists) {
  EXPECT_EQ(parse_int_list("2,3,5-7"), (std::vector<int>{2, 3, 5, 6, 7}));
  EXPECT_EQ(parse_int_list(" 4 "), (std::vector<int>{4}));
  EXPECT_THROW(parse_int_list("5-2"), std::invalid_argument);
  EXPECT_THROW(parse_int_list("a"), std::invalid_argument);
  EXPECT_THROW(parse_int_list(""), std::invalid_argument);
}

TEST(Fit, RecoversExactLine) {
  const std::vector<double> x = {0.1, 0.2, 0.4}, v = {0.9 - 0.15, 0.9 - 0.3, 0.9 - 0.6};
  const auto f = fit_linear(x, v);
  EXPECT_NEAR(f.beta_est, 0.9, 1e-14);
  EXPECT_NEAR(f.c_est, 1.5, 1e-13);
  EXPECT_NEAR(f.residual, 0.0, 1e-14);
  EXPECT_ANY_THROW(fit_linear({0.1}, {0.2}));
  EXPECT_ANY_THROW(fit_linear({0.1, 0.1}, {0.2, 0.3}));
}

TEST(Commands, BoundTableCrossover) {
  const auto dir = scratch_dir("bounds");
  const auto res = cmd_bound_table(1, 30, quick_options(dir));
  EXPECT_EQ(std::get<long long>(*res.report.summary_value("crossover_Z")), 6);
  EXPECT_EQ(std::get<std::string>(res.report.at(4, "smaller")), "lieb");
  EXPECT_EQ(std::get<std::string>(res.report.at(5, "smaller")), "theorem");
  EXPECT_NEAR(as_double(res.report.at(0, "theorem")), 4.22, 1e-14);
  EXPECT_EQ(res.exit_code, kExitSuccess);
}

TEST(Commands, NuTableRows) {
  const auto dir = scratch_dir("nu");
  const auto res = cmd_nu_table({2}, {1, 3}, true, quick_options(dir));
  ASSERT_EQ(res.report.records.size(), 3u);
  EXPECT_EQ(std::get<std::string>(res.report.at(0, "convention")), "full-line");
  EXPECT_NEAR(as_double(res.report.at(0, "nu")), 1.5, 1e-4);
  EXPECT_EQ(std::get<std::string>(res.report.at(1, "convention")), "half-line");
  EXPECT_LE(as_double(res.report.at(1, "nu")), 1.0 + 1e-6);
  EXPECT_NEAR(as_double(res.report.at(2, "nu")), 1.5, 1e-4);
  EXPECT_EQ(res.exit_code, kExitSuccess);
  EXPECT_THROW(cmd_nu_table({1}, {3}, false, quick_options(dir)), std::invalid_argument);
  EXPECT_THROW(cmd_nu_table({201}, {3}, false, quick_options(dir)), std::invalid_argument);
}

TEST(Commands, DeterministicAcrossJobs) {
  const auto dir = scratch_dir("det");
  auto o = quick_options(dir);
  const auto a = cmd_nu_table({2, 3, 4}, {2}, false, o);
  const auto b = cmd_nu_table({2, 3, 4}, {2}, false, o);
  EXPECT_TRUE(same_results(a.report, b.report));
  o.jobs = 1;
  const auto c = cmd_nu_table({2, 3, 4}, {2}, false, o);
  EXPECT_EQ(a.report.records, c.report.records);
}

TEST(Commands, BetaSmall) {
  const auto dir = scratch_dir("beta");
  const auto res = cmd_beta({2, 3, 4}, {1e-2, 1e2, 40}, quick_options(dir));
  ASSERT_TRUE(res.report.fit.has_value());
  EXPECT_NEAR(as_double(res.report.at(0, "v")), 0.5, 1e-6);
  EXPECT_NE(res.report.summary_value("beta_rad"), nullptr);
  EXPECT_THROW(cmd_beta({129}, {}, quick_options(dir)), std::invalid_argument);
}

TEST(Commands, TfWritesSolutionFiles) {
  const auto dir = scratch_dir("tf");
  const auto res = cmd_tf(5.0, 5.0, 1.0, {}, quick_options(dir));
  EXPECT_EQ(res.exit_code, kExitSuccess);
  EXPECT_EQ(res.report.records.size(), 20u);
  EXPECT_TRUE(fs::exists(dir / "tf_solution.csv"));
  std::ifstream side(dir / "tf_solution.json");
  const auto j = nlohmann::json::parse(side);
  EXPECT_LE(j["total_charge"].get<double>(), 5.0 * (1 + 1e-4));
  ASSERT_FALSE(res.messages.empty());
  EXPECT_NE(res.messages.back().find("PASS"), std::string::npos);
}

TEST(Commands, CheckSuites) {
  const auto dir = scratch_dir("check");
  const auto res = cmd_check("all", 200, quick_options(dir));
  ASSERT_EQ(res.report.records.size(), suite_names().size());
  EXPECT_EQ(res.exit_code, kExitSuccess);
  EXPECT_EQ(std::get<std::string>(res.report.at(4, "verdict")), "EXPLORATORY");
  EXPECT_TRUE(fs::exists(dir / "counterexamples" / "proofB-offdiag_minimum.txt"));
  // A single suite uses the same seed as in "all".
  const auto one = cmd_check("triangle", 200, quick_options(dir));
  EXPECT_EQ(one.report.records[0], res.report.records[1]);
  EXPECT_THROW(cmd_check("nope", 1, quick_options(dir)), std::invalid_argument);
}

TEST(Suites, CounterexamplesReproduce) {
  const auto r = run_suite("proofA-offdiag", 50, 3);
  ASSERT_EQ(r.counterexamples.size(), 1u);
  EXPECT_LT(r.min_value, 0.0);
  EXPECT_EQ(r.verdict, SuiteVerdict::Exploratory);
  EXPECT_EQ(run_suite("sigal", 1000, 9).violations, 0);
  EXPECT_EQ(run_suite("elementary", 1000, 9).min_value, run_suite("elementary", 1000, 9).min_value);
  EXPECT_THROW(run_suite("nope", 1, 1), std::invalid_argument);
}

TEST(Cli, ExitCodesAndConfig) {
  const auto dir = scratch_dir("cli");
  EXPECT_EQ(run_cli("bound-table --out " + dir.string()), 0);
  EXPECT_EQ(run_cli(""), 3);
  EXPECT_EQ(run_cli("tf --Z 1"), 3);
  EXPECT_EQ(run_cli("bound-table --format xml"), 3);
  EXPECT_EQ(run_cli("nu-table --N 1 --out " + dir.string()), 3);
  EXPECT_EQ(run_cli("--help"), 0);
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "Z-min = 2\nZ-max = 9\nformat = csv\nout = " << (dir / "cfg").string() << "\n";
  }
  EXPECT_EQ(run_cli("bound-table --config " + (dir / "run.cfg").string() + " --Z-max 7"), 0);
  std::ifstream csv(dir / "cfg" / "bound-table.csv");
  std::string line;
  int rows = -1;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 6);
}
