#include <cstdio>
#include <string>

#include <sys/wait.h>

#include <doctest.h>
#include <json.hpp>

#include "sps/ncpoly.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SPS_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
    result.output.append(buf, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string strip_newline(std::string text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.pop_back();
  }
  return text;
}

}  // namespace

TEST_CASE("dimension table output") {
  CliResult r = run_cli("seq --n 2 --table --json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["n"] == 2);
  CHECK(j["max_degree"] == 40);
  CHECK(j["dims"].size() == 41);
  CHECK(j["dims"][0] == "1");
  CHECK(j["dims"][3] == "21");
  CHECK(j["dims"][8] == "2584");
}

TEST_CASE("usage errors exit with code two") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("bogus").exit_code == 2);
  CHECK(run_cli("seq").exit_code == 2);
  CHECK(run_cli("seq --n 0").exit_code == 2);
  CHECK(run_cli("verify --max-degree 2").exit_code == 2);
}

TEST_CASE("k group summary output") {
  CliResult r = run_cli("kk --n 3 --groups");
  CHECK(r.exit_code == 0);
  auto got = nlohmann::json::parse(r.output);
  auto expected = nlohmann::json::parse(
      R"({"K0":{"rank":0,"torsion":[2]},"K1":{"rank":0,"torsion":[]},"euler":-2})");
  CHECK(got == expected);

  CliResult r1 = run_cli("kk --n 1 --groups");
  CHECK(r1.exit_code == 0);
  auto got1 = nlohmann::json::parse(r1.output);
  auto expected1 = nlohmann::json::parse(
      R"({"K0":{"rank":1,"torsion":[]},"K1":{"rank":1,"torsion":[]},"euler":0})");
  CHECK(got1 == expected1);
}

TEST_CASE("generator polynomial print round trip") {
  CliResult r = run_cli("ideal --n 2 --print");
  CHECK(r.exit_code == 0);
  const std::string line = strip_newline(r.output);
  CHECK(!line.empty());
  sps::NcPolynomial parsed = sps::parse_polynomial(line, 2);
  CHECK(sps::format_polynomial(parsed) == line);
}

TEST_CASE("build then verify a saved system") {
  const std::string path = "/tmp/sps_cli_round_trip.json";
  std::remove(path.c_str());
  CliResult built = run_cli("build --n 1 --max-degree 5 --out " + path);
  CHECK(built.exit_code == 0);
  CHECK(built.output.find("dims 1 2 3 4 5 6") != std::string::npos);
  CliResult checked = run_cli("verify --in " + path);
  CHECK(checked.exit_code == 0);
  std::remove(path.c_str());
}

TEST_CASE("report stream is machine readable") {
  CliResult r = run_cli("rep --n 1 --samples 2 --json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  REQUIRE(j.is_array());
  REQUIRE(!j.empty());
  for (const auto& item : j) {
    CHECK(item.contains("name"));
    CHECK(item.contains("params"));
    CHECK(item.contains("residual"));
    CHECK(item.contains("tolerance"));
    CHECK(item["pass"].is_boolean());
  }
}

TEST_CASE("tolerance cap can only tighten") {
  CliResult r = run_cli("--tol 1e-30 rep --n 1");
  CHECK(r.exit_code == 1);
  CliResult loose = run_cli("--tol 10.0 rep --n 1");
  CHECK(loose.exit_code == 0);
}
