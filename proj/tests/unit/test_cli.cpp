#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = ginin::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
  return std::string(GININ_FIXTURE_DIR) + "/" + name;
}

std::string write_temp(const std::string& name, const std::string& contents) {
  const std::string path = std::string(GININ_BINARY_DIR) + "/" + name;
  std::ofstream f(path);
  f << contents;
  return path;
}

}  // namespace

TEST_CASE("compute prints the closed-form table") {
  const auto result = run_cli({"compute", "--dist", "exponential:1", "--order", "4"});
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("0.458333333") != std::string::npos);
  CHECK(result.out.find("closed-form") != std::string::npos);
}

TEST_CASE("compute handles order lists and json output") {
  const auto result =
      run_cli({"--format", "json", "compute", "--dist", "pareto:3,2", "--order", "2,5"});
  REQUIRE(result.exit_code == 0);
  const json parsed = json::parse(result.out);
  REQUIRE(parsed.at("rows").size() == 2);
  CHECK(parsed.at("rows")[1].at("gc").get<double>() == doctest::Approx(19.0 / 110.0));
  CHECK(parsed.at("dist").get<std::string>() == "Pareto(3,2)");
}

TEST_CASE("bounds subcommand matches the printed ratio bound") {
  const auto result = run_cli({"bounds", "--kind", "ratio", "--m", "3", "--n", "4"});
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("0.875") != std::string::npos);
  const auto sd = run_cli({"--format", "json", "bounds", "--kind", "sd", "--n", "2"});
  CHECK(json::parse(sd.out).at("upper").get<double>() == doctest::Approx(0.5773502691896258));
}

TEST_CASE("bounds choquet needs coefficient lists") {
  const auto missing = run_cli({"bounds", "--kind", "choquet"});
  CHECK(missing.exit_code == 1);
  const auto ok = run_cli({"--format", "json", "bounds", "--kind", "choquet", "--h-coeffs",
                           "2,-2", "--g-coeffs", "1,-1", "--grid", "5000"});
  REQUIRE(ok.exit_code == 0);
  CHECK(json::parse(ok.out).at("lower").get<double>() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("analyze reproduces the two-bracket numbers") {
  const auto result = run_cli({"analyze", "--input", fixture("two_bracket.csv"), "--orders", "2",
                               "--shares", "0.1"});
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.find("0.426315789") != std::string::npos);
  CHECK(result.out.find("0.526315789") != std::string::npos);
}

TEST_CASE("analyze json round-trips") {
  const auto result = run_cli({"--format", "json", "analyze", "--input",
                               fixture("panel_two_country.csv"), "--orders", "2,10", "--shares",
                               "0.01"});
  REQUIRE(result.exit_code == 0);
  const json rows = json::parse(result.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].at("entity") == "A");
  CHECK(rows[0].at("gc_10").get<double>() > rows[1].at("gc_10").get<double>() + 0.03);
}

TEST_CASE("estimate on a sample file") {
  std::ostringstream sample;
  for (int i = 1; i <= 200; ++i) sample << (i % 7 + 0.25 * i) << "\n";
  const std::string path = write_temp("estimate_input.txt", sample.str());
  const auto plain = run_cli({"estimate", "--input", path, "--order", "3"});
  CHECK(plain.exit_code == 0);
  CHECK(plain.out.find("plugin-asymptotic") != std::string::npos);
  const auto booted = run_cli({"--format", "json", "--seed", "9", "estimate", "--input", path,
                               "--order", "3", "--scheme", "exact", "--bootstrap", "100",
                               "--level", "0.9", "--target", "gc"});
  REQUIRE(booted.exit_code == 0);
  const json report = json::parse(booted.out);
  CHECK(report.at("method") == "bootstrap");
  CHECK(report.at("scheme") == "exact");
  CHECK(report.at("ci_lo").get<double>() <= report.at("point").get<double>());
  CHECK(report.at("ci_hi").get<double>() >= report.at("point").get<double>());
}

TEST_CASE("simulate emits the summary json schema") {
  const auto result = run_cli({"simulate", "--dist", "exponential:1", "--order", "2",
                               "--sample-size", "300", "--reps", "50", "--target", "gd"});
  REQUIRE(result.exit_code == 0);
  const json summary = json::parse(result.out);
  for (const char* key : {"replications", "estimate_mean", "estimate_variance", "predicted_mean",
                          "predicted_variance_over_N", "ks_distance"}) {
    CHECK(summary.contains(key));
  }
  CHECK(summary.at("replications").get<int>() == 50);
}

TEST_CASE("backtest emits the report schema") {
  std::ostringstream sample;
  for (int i = 0; i < 400; ++i) sample << (0.5 + 0.001 * (i % 13)) << "\n";
  const std::string path = write_temp("backtest_input.txt", sample.str());
  const auto result = run_cli({"backtest", "--variant", "gd-m2", "--order", "2", "--input", path,
                               "--a", "0.1", "--b", "0.2"});
  REQUIRE(result.exit_code == 0);
  const json report = json::parse(result.out);
  for (const char* key : {"variant", "n", "forecast_a", "forecast_b", "mean_score_a",
                          "mean_score_b", "mean_diff", "t_statistic", "tuples"}) {
    CHECK(report.contains(key));
  }
  CHECK(report.at("n").get<int>() == 2);
}

TEST_CASE("identical invocations produce identical bytes") {
  const std::vector<std::string> args{"simulate", "--dist", "lognormal:0,1", "--order",
                                      "3",        "--sample-size", "200",    "--reps",
                                      "40",       "--target",      "gc",     "--seed",
                                      "77"};
  CHECK(run_cli(args).out == run_cli(args).out);
}

TEST_CASE("thread count does not change the output") {
  const auto one = run_cli({"--threads", "1", "--seed", "3", "simulate", "--dist",
                            "exponential:1", "--order", "2", "--sample-size", "200", "--reps",
                            "32", "--target", "gd"});
  const auto four = run_cli({"--threads", "4", "--seed", "3", "simulate", "--dist",
                             "exponential:1", "--order", "2", "--sample-size", "200", "--reps",
                             "32", "--target", "gd"});
  CHECK(one.out == four.out);
}

TEST_CASE("seed comes from GININ_SEED unless --seed overrides") {
  const std::vector<std::string> simulate{"simulate", "--dist",  "exponential:1",
                                          "--order",  "2",       "--sample-size",
                                          "200",      "--reps",  "32",
                                          "--target", "gd"};
  setenv("GININ_SEED", "123", 1);
  const auto env_run = run_cli(simulate);
  unsetenv("GININ_SEED");
  auto with_flag = simulate;
  with_flag.insert(with_flag.begin(), {"--seed", "123"});
  CHECK(env_run.out == run_cli(with_flag).out);

  setenv("GININ_SEED", "123", 1);
  auto override_flag = simulate;
  override_flag.insert(override_flag.begin(), {"--seed", "9"});
  const auto overridden = run_cli(override_flag);
  unsetenv("GININ_SEED");
  CHECK(overridden.out != env_run.out);
}

TEST_CASE("usage and validation errors exit with code 1") {
  CHECK(run_cli({"compute"}).exit_code == 1);                       // missing flags
  CHECK(run_cli({"compute", "--dist", "cauchy:1", "--order", "2"}).exit_code == 1);
  CHECK(run_cli({"compute", "--dist", "exponential:1", "--order", "1"}).exit_code == 1);
  CHECK(run_cli({"nonsense"}).exit_code == 1);
  const auto unknown_flag =
      run_cli({"compute", "--dist", "exponential:1", "--order", "2", "--bogus"});
  CHECK(unknown_flag.exit_code == 1);
  CHECK_FALSE(unknown_flag.err.empty());
}

TEST_CASE("domain errors from the library map to exit code 1") {
  // Pareto alpha <= 2 violates the CLT moment condition: validation, not
  // non-convergence.
  const auto result = run_cli({"simulate", "--dist", "pareto:2,1", "--order", "2",
                               "--sample-size", "100", "--reps", "20", "--target", "gd"});
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("alpha") != std::string::npos);
}

TEST_CASE("help succeeds") {
  CHECK(run_cli({"--help"}).exit_code == 0);
}
