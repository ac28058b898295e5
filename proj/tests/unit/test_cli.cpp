#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixconc/cli.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Outcome r;
  r.code = mixconc::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const std::string kF1 = std::string(MIXCONC_FIXTURE_DIR) + "/f1.json";
const std::string kF4 = std::string(MIXCONC_FIXTURE_DIR) + "/f4.json";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("mixing and contraction") {
  const Outcome mixing = invoke({"mixing", "--spec", kF1});
  REQUIRE(mixing.code == 0);
  const json doc = json::parse(mixing.out);
  CHECK(doc["schema"] == "mixconc/1");
  CHECK(doc["inf_norm"].get<double>() == doctest::Approx(1.75).epsilon(1e-12));
  const Outcome contraction = invoke({"contraction", "--spec", kF1});
  REQUIRE(contraction.code == 0);
  CHECK(json::parse(contraction.out)["m_n"].get<double>() == 1.75);
  CHECK(invoke({"contraction", "--spec", kF4}).code == 0);
}

TEST_CASE("certify") {
  const Outcome r = invoke({"certify", "--spec", kF1, "--c", "1", "--metric", "hamming", "--t", "0:1:2"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["bound"][0].get<double>() == 2.0);
  CHECK(doc["bound"].size() == 3);
  const Outcome markov = invoke({"certify", "--spec", kF1, "--constant", "mn", "--t", "1"});
  CHECK(markov.code == 0);
}

TEST_CASE("kernel commands") {
  const Outcome psi = invoke({"psi", "--spec", kF1, "--i", "1", "--prefix", "a"});
  REQUIRE(psi.code == 0);
  CHECK(json::parse(psi.out)["psi_norm"].get<double>() == doctest::Approx(0.875).epsilon(1e-12));
  const Outcome phi = invoke({"phi-oracle", "--spec", kF1, "--i", "1", "--prefix", "a"});
  REQUIRE(phi.code == 0);
  const json doc = json::parse(phi.out);
  CHECK(doc["value"].get<double>() == doctest::Approx(0.875).epsilon(1e-12));
  CHECK(doc["visited"] == 1238);
  const Outcome flow = invoke({"phi-oracle", "--spec", kF1, "--i", "1", "--prefix", "a", "--route", "max-flow"});
  REQUIRE(flow.code == 0);
  CHECK(json::parse(flow.out)["value"].get<double>() == doctest::Approx(0.875).epsilon(1e-12));
  const Outcome bar = invoke({"bar", "--spec", kF1, "--i", "1"});
  REQUIRE(bar.code == 0);
  CHECK(json::parse(bar.out)["lhs"].get<double>() == doctest::Approx(0.875).epsilon(1e-12));
}

TEST_CASE("simulate writes the comparison table") {
  const Outcome r = invoke({"simulate", "--spec", kF1, "--phi", "hamming-weight:a", "--samples", "2000", "--seed", "7",
                            "--t", "0:0.5:2", "--format", "tsv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t\tempirical\tupper_conf\tbound\teffective_bound\tverdict");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 5);
  const Outcome again = invoke({"simulate", "--spec", kF1, "--phi", "hamming-weight:a", "--samples", "2000", "--seed",
                                "7", "--t", "0:0.5:2", "--format", "tsv", "--workers", "3"});
  CHECK(again.out == r.out);
}

TEST_CASE("exit codes and error documents") {
  const Outcome negative = invoke({"certify", "--spec", kF1, "--c", "-1"});
  CHECK(negative.code == 1);
  const json err = json::parse(negative.err);
  CHECK(err["schema"] == "mixconc/1");
  CHECK(err["kind"] == "error");
  CHECK(err["error"] == "usage");
  const Outcome grid = invoke({"certify", "--spec", kF1, "--t=-1"});
  CHECK(grid.code == 1);
  CHECK(json::parse(grid.err)["error"] == "validation");

  CHECK(invoke({"mixing", "--spec", "/nonexistent.json"}).code == 1);
  CHECK(invoke({"bogus"}).code == 1);
  CHECK(invoke({"psi", "--spec", kF1, "--i", "1", "--prefix", "q"}).code == 1);

  const Outcome capacity = invoke({"mixing", "--spec", kF1, "--budget", "4"});
  CHECK(capacity.code == 2);
  CHECK(json::parse(capacity.err)["error"] == "capacity");

  ::setenv("MIXCONC_BUDGET", "4", 1);
  CHECK(invoke({"mixing", "--spec", kF1}).code == 2);
  CHECK(invoke({"mixing", "--spec", kF1, "--budget", "64"}).code == 0);
  ::unsetenv("MIXCONC_BUDGET");
  CHECK(invoke({"mixing", "--spec", kF1}).code == 0);
}

TEST_CASE("help") {
  const Outcome r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("simulate") != std::string::npos);
}

TEST_CASE("verify") {
  const Outcome r = invoke({"verify", "--suite", "all", "--fixtures", MIXCONC_FIXTURE_DIR, "--scale", "0.2"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["passed"] == true);
}

}  // TEST_SUITE
