#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pocmob/cli.hpp"
#include "pocmob/report.hpp"
#include "test_support.hpp"

using namespace pocmob;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return test::source_path("fixtures/" + name + ".mech"); }

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("structured reports round trip") {
  for (const auto& name : test::fixture_names()) {
    CAPTURE(name);
    const auto mech = test::load_fixture(name);
    const auto report = analyze_mechanism(mech);
    auto s = summarize(report, {"a warning"});
    CHECK(parse_structured(render_structured(s)) == s);
    s.oracle = summarize(compare_with_oracle(mech, report, 2), kDefaultOracleSeed);
    s.oracle->mismatches.push_back("seed 1: made up");
    CHECK(parse_structured(render_structured(s)) == s);
  }
}

TEST_CASE("structured output from the CLI re-parses to the analysis fields") {
  for (const auto& name : test::fixture_names()) {
    CAPTURE(name);
    const auto r = run_cli({"analyze", "--format", "structured", "--trace", fixture(name)});
    REQUIRE(r.code == 0);
    const auto parsed = parse_structured(r.out);
    const auto expected = summarize(analyze_mechanism(test::load_fixture(name)));
    CHECK(parsed == expected);
    CHECK(nlohmann::json::parse(r.out).at("format_version") == kReportFormatVersion);
  }

  const auto both = run_cli({"analyze", "--format", "structured", fixture("tricept"), fixture("3rrc")});
  REQUIRE(both.code == 0);
  const auto arr = nlohmann::json::parse(both.out);
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 2);
  CHECK(parse_structured(arr[0].dump()).mechanism == "tricept");
  CHECK(parse_structured(arr[1].dump()).dof == 3);
}

TEST_CASE("malformed structured input") {
  CHECK_THROWS_AS(parse_structured("not json"), ReportFormatError);
  CHECK_THROWS_AS(parse_structured("{}"), ReportFormatError);
  auto j = nlohmann::json::parse(render_structured(summarize(analyze_mechanism(test::load_fixture("3rrc")))));
  j["format_version"] = kReportFormatVersion + 1;
  CHECK_THROWS_AS(parse_structured(j.dump()), ReportFormatError);
}

TEST_CASE("golden human reports") {
  for (const std::string name : {"tricept", "3rrc"}) {
    CAPTURE(name);
    const auto r = run_cli({"analyze", "--trace", fixture(name)});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK(r.out == test::read_file(test::source_path("tests/golden/" + name + ".txt")));
  }
}

TEST_CASE("human report without trace") {
  const auto r = run_cli({"analyze", fixture("tricept")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "DOF = 3\n"));
  CHECK(contains(r.out, "class = 1T2R\n"));
  CHECK_FALSE(contains(r.out, "trace:"));

  const auto two = run_cli({"analyze", fixture("coaxial_2r"), fixture("parallel_2r_rigid")});
  CHECK(contains(two.out, "==> " + fixture("coaxial_2r") + " <=="));
  CHECK(contains(two.out, "DOF = rigid (F = 0)"));
}

TEST_CASE("oracle flag") {
  const auto r = run_cli({"analyze", "--oracle", fixture("3rrc")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "oracle: 20/20 agree"));
  const auto few = run_cli({"analyze", "--oracle", "--seeds", "3", "--format", "structured", fixture("tricept")});
  CHECK(few.code == 0);
  const auto s = parse_structured(few.out);
  REQUIRE(s.oracle.has_value());
  CHECK(s.oracle->seeds == 3);
  CHECK(s.oracle->all_agree());
}

TEST_CASE("exit codes and diagnostics") {
  auto r = run_cli({"analyze", "no_such_file.mech"});
  CHECK(r.code == cli::kParseError);
  CHECK(contains(r.err, "pocmob: cannot read 'no_such_file.mech'"));

  const auto bad = test::source_path("tests/data/bad.mech");
  r = run_cli({"analyze", bad});
  CHECK(r.code == cli::kParseError);
  CHECK(contains(r.err, bad + ":1:1: error: expected 'mechanism'"));

  r = run_cli({"analyze", "--policy", "strict", fixture("3rrc")});
  CHECK(r.code == cli::kAnalysisError);
  CHECK(contains(r.err, "analysis error"));

  r = run_cli({"analyze", "--policy", "strict", fixture("3rrc"), "no_such_file.mech", fixture("tricept")});
  CHECK(r.code == cli::kParseError);

  CHECK(run_cli({"analyze", "--format", "xml", fixture("3rrc")}).code == cli::kParseError);
  CHECK(run_cli({"analyze", "--seeds", "0", "--oracle", fixture("3rrc")}).code == cli::kParseError);
  CHECK(run_cli({"analyze"}).code == cli::kParseError);
  CHECK(run_cli({"analyze", "--help"}).code == cli::kOk);

  ::setenv("POC_SEED", "abc", 1);
  CHECK(run_cli({"analyze", "--oracle", fixture("3rrc")}).code == cli::kParseError);
  ::setenv("POC_SEED", "7", 1);
  const auto seeded = run_cli({"analyze", "--oracle", "--seeds", "2", "--format", "structured", fixture("3rrc")});
  ::unsetenv("POC_SEED");
  CHECK(seeded.code == 0);
  CHECK(parse_structured(seeded.out).oracle->base_seed == 7);
}

TEST_CASE("warnings reach stderr") {
  const auto w = test::source_path("tests/data/defaults.mech");
  const auto r = run_cli({"analyze", w});
  CHECK(r.code == 0);
  CHECK(contains(r.err, w + ": warning: fixed platform not given"));
}
