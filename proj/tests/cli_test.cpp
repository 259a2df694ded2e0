#include <doctest.h>

#include <sstream>

#include "cli.hpp"
#include "lucasdensity/errors.hpp"

using namespace lucasdensity;
using namespace lucasdensity::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Rational from_json(const nlohmann::json& j) {
  return arith::ratio(Integer(j.at("num").dump()), Integer(j.at("den").dump()));
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("density subcommand, text") {
  const Run r = run_cli({"density", "--gamma", "3", "1", "--radicand", "8", "--d", "6"});
  CHECK(r.code == kOk);
  CHECK(contains(r.out, "17/64 (0.265625)"));
  CHECK(contains(r.out, "Q0"));
  const Run f = run_cli({"density", "--a1", "1", "--a2", "-1", "--d", "2"});
  CHECK(f.code == kOk);
  CHECK(contains(f.out, "2/3 (0.666666)"));
}

TEST_CASE("density JSON round-trips") {
  const Run r = run_cli({"density", "--gamma", "-240/338", "-119/338", "--radicand", "-4", "--d", "26", "--json"});
  REQUIRE(r.code == kOk);
  const auto j = nlohmann::json::parse(r.out);
  const Rational delta = from_json(j["delta"]);
  CHECK(delta == arith::ratio(611, 8064));
  CHECK(from_json(j["delta_plus"]) + from_json(j["delta_minus"]) == delta);
  CHECK(j["case"] == "GAUSS_HI");
  CHECK(j["h"] == 2);
  CHECK(j["zeta"] == "i");
  Rational sum = 0;
  for (const auto& t : j["trace"]) sum += from_json(t["coeff"]) * from_json(t["value"]);
  CHECK(sum == delta);
}

TEST_CASE("csv output") {
  const Run r = run_cli({"density", "--gamma", "-13/14", "3/14", "--radicand", "-3", "--d", "3", "--format", "csv"});
  CHECK(r.code == kOk);
  CHECK(r.out == "delta,delta_plus,delta_minus,case,h,zeta\n3/4,3/8,3/8,EISEN,1,1\n");
}

TEST_CASE("oracle check") {
  const Run r = run_cli({"density", "--gamma", "3", "1", "--radicand", "8", "--d", "6", "--oracle-check"});
  CHECK(r.code == kOk);
  CHECK(contains(r.out, "contained"));
  CHECK_FALSE(contains(r.out, "NOT CONTAINED"));
}

TEST_CASE("invalid input exits with 2") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"density", "--a1", "2", "--a2", "1", "--d", "3"},
           {"density", "--a1", "1", "--a2", "1", "--d", "3"},
           {"density", "--a1", "1", "--a2", "-1", "--d", "0"},
           {"density", "--a1", "1", "--a2", "-1"},
           {"density", "--a1", "1", "--a2", "-1", "--gamma", "3", "1", "--radicand", "8", "--d", "2"},
           {"density", "--gamma", "3", "2", "--radicand", "8", "--d", "2"},
           {"density", "--gamma", "x", "1", "--radicand", "8", "--d", "2"},
           {"density", "--a1", "1", "--a2", "-1", "--d", "2", "--format", "xml"},
           {"verify", "--a1", "1", "--a2", "-1", "--d", "2", "--limit", "50"},
           {"frobnicate"},
       }) {
    const Run r = run_cli(args);
    CAPTURE(args.front());
    CHECK(r.code == kInvalidInput);
  }
  CHECK(contains(run_cli({"density", "--a1", "2", "--a2", "1", "--d", "3"}).err, "ReducibleError"));
  CHECK(contains(run_cli({"density", "--a1", "1", "--a2", "1", "--d", "3"}).err, "TorsionError"));
}

TEST_CASE("verify subcommand") {
  const Run r = run_cli({"verify", "--a1", "1", "--a2", "-1", "--d", "2", "--limit", "100000", "--json"});
  REQUIRE(r.code == kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["counted_plus"].get<long>() + j["counted_minus"].get<long>() == j["counted"].get<long>());
  const Run one = run_cli({"verify", "--a1", "1", "--a2", "-1", "--d", "1", "--limit", "1000", "--strict"});
  CHECK(one.code == kOk);
  CHECK(contains(one.out, "PASS"));
}

TEST_CASE("tables subcommand") {
  const Run r = run_cli({"tables"});
  CHECK(r.code == kOk);
  CHECK(contains(r.out, "18/18 exact matches against the ledger"));
  CHECK(contains(r.out, "611/8064"));
  CHECK(contains(r.out, "printed as 661/8064"));
  const auto j = nlohmann::json::parse(run_cli({"tables", "--json"}).out);
  CHECK(j["matches"] == 18);
  CHECK(j["rows"].size() == 18);
}

TEST_CASE("explain subcommand") {
  const Run r = run_cli({"explain", "--gamma", "48/50", "7/50", "--radicand", "-4", "--d", "10"});
  CHECK(r.code == kOk);
  CHECK(contains(r.out, "routing data:"));
  CHECK(contains(r.out, "derivation:"));
  CHECK(contains(r.out, "zeta* = i"));
  CHECK(contains(r.out, "235/1152"));
  CHECK(contains(r.out, "GAUSS_HI"));
  const Run t = run_cli({"explain", "--a1", "1", "--a2", "-1", "--d", "1"});
  CHECK(contains(t.out, "trivial: density 1"));
}

TEST_CASE("decimal truncation") {
  CHECK(truncate_decimal(arith::ratio(2, 3)) == "0.666666");
  CHECK(truncate_decimal(arith::ratio(17, 64)) == "0.265625");
  CHECK(truncate_decimal(1) == "1.000000");
  CHECK(truncate_decimal(arith::ratio(-1, 3)) == "-0.333333");
  CHECK(truncate_decimal(arith::ratio(611, 8064), 4) == "0.0757");
}

TEST_CASE("error names") {
  CHECK(error_name(TorsionError("x")) == "TorsionError");
  CHECK(error_name(std::runtime_error("x")) == "error");
}
