#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

using nlohmann::json;

std::string binary_path() {
  const char* env = std::getenv("ORDLAB_BIN");
  REQUIRE(env != nullptr);
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args, bool merge_stderr = false) {
  const std::string command =
      binary_path() + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof(buffer), pipe)) {
    result.output.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

struct Workspace {
  Workspace() {
    REQUIRE(std::system("mkdir -p cli_tmp") == 0);
    std::ofstream("cli_tmp/p.json") << "[\"5/6\", \"0\", \"1/6\"]";
    std::ofstream("cli_tmp/q.json") << "[\"2/3\", \"1/6\", \"1/6\"]";
    std::ofstream("cli_tmp/bad.json") << "[0.5, 0.6]";
    std::ofstream("cli_tmp/e.json") << "[1, -1, 0]";
    std::ofstream("cli_tmp/chain.json")
        << R"({"p0": ["1/2", "1/2"], "mats": [[["2/3","2/3"],["1/3","1/3"]]]})";
    std::ofstream("cli_tmp/badchain.json")
        << R"({"p0": [0.5, 0.5], "mats": [[[0.5, 0.48], [0.5, 0.5]]]})";
    std::ofstream("cli_tmp/batch.csv") << "0.5,0.25,0.25,0.5,0.5,0\n"
                                          "0.5,0.5,0,0.6666,0.1667,0.1667\n";
    std::ofstream("cli_tmp/works.csv") << "0.1\n-0.2\n0.3\n0.05\n-0.15\n";
  }
};

json result_of(const RunResult& run_result) {
  REQUIRE(run_result.exit_code == 0);
  return json::parse(run_result.output).at("result");
}

}  // namespace

TEST_CASE("compare and error paths") {
  Workspace ws;
  const auto ok = run("majo compare --order u cli_tmp/p.json cli_tmp/q.json");
  CHECK(result_of(ok).at("verdict") == "StrictlyLess");

  const auto incomparable =
      run("majo compare --order u cli_tmp/q.json cli_tmp/bad.json", true);
  CHECK(incomparable.exit_code == 1);
  CHECK(incomparable.output.find("NotNormalized") != std::string::npos);

  const auto usage = run("bogus", true);
  CHECK(usage.exit_code == 2);

  const auto missing = run("majo compare --order d cli_tmp/p.json cli_tmp/q.json", true);
  CHECK(missing.exit_code == 1);
}

TEST_CASE("batch CSV verdicts") {
  Workspace ws;
  const auto batch = run("majo compare --order m --batch cli_tmp/batch.csv --emit csv");
  CHECK(batch.exit_code == 0);
  CHECK(batch.output == "verdict\nStrictlyLess\nIncomparable\n");
}

TEST_CASE("transfer path of the figure example") {
  Workspace ws;
  const auto result = result_of(run("majo transfer-path cli_tmp/p.json cli_tmp/q.json"));
  CHECK(result.at("related") == true);
  REQUIRE(result.at("steps").size() == 1);
  CHECK(result["steps"][0]["from"] == 0);
  CHECK(result["steps"][0]["to"] == 1);
  CHECK(std::abs(result["steps"][0]["mass"].get<double>() - 1.0 / 6.0) < 1e-12);
}

TEST_CASE("maxent solve passes values through") {
  Workspace ws;
  const auto result = result_of(run("maxent solve --E cli_tmp/e.json --target 0.25"));
  CHECK(std::abs(result.at("beta").get<double>() + 0.38415) < 1e-4);
  CHECK(std::abs(result.at("p")[0].get<double>() - 0.46624) < 1e-4);
}

TEST_CASE("fluct jarzynski exact and rational lane") {
  Workspace ws;
  const auto result = result_of(run("fluct jarzynski --exact cli_tmp/chain.json"));
  CHECK(std::abs(result.at("value").get<double>() - 1.0) < 1e-12);
  CHECK(result.at("exact") == "1");

  const auto bad = run("fluct jarzynski --exact cli_tmp/badchain.json", true);
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("ParseError") != std::string::npos);
  CHECK(bad.output.find("mats[0]") != std::string::npos);
}

TEST_CASE("bootstrap and kde plumbing") {
  Workspace ws;
  const auto ci = result_of(
      run("fluct bootstrap --samples cli_tmp/works.csv --resamples 200 --level 0.9 --seed 4"));
  CHECK(ci.at("lo").get<double>() <= ci.at("hi").get<double>());

  const auto kde = result_of(run("fluct kde --samples cli_tmp/works.csv --at 0.0"));
  CHECK(kde.at("density").get<double>() > 0.0);
}

TEST_CASE("csv emission has headers") {
  Workspace ws;
  const auto csv =
      run("maxent maximal-segment --E cli_tmp/e.json --target 0.25 --grid 101 --emit csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.output.rfind("p0,p1,p2,H\n", 0) == 0);

  const auto crooks_csv = run("fluct crooks --exact cli_tmp/chain.json --emit csv", false);
  // One transition with p_1 != p_0 violates the Crooks hypotheses.
  CHECK(crooks_csv.exit_code == 1);
}

TEST_CASE("domain subcommands") {
  const auto leq = result_of(run("domain interval-leq --a 0,1 --b 1/4,1/2"));
  CHECK(leq.at("ok") == true);
  const auto pair = result_of(run("domain pair --n 1 --m 0"));
  CHECK(pair.at("k") == 2);
  const auto word = result_of(run("domain cantor-leq --x 01 --y \"01(10)\""));
  CHECK(word.at("ok") == true);
}

TEST_CASE("seed is echoed and output is stable") {
  Workspace ws;
  const auto a = run("fluct jarzynski --mc --count 500 --seed 9 cli_tmp/chain.json");
  const auto b = run("fluct jarzynski --mc --count 500 --seed 9 cli_tmp/chain.json");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(json::parse(a.output).at("meta").at("seed") == 9);
}
