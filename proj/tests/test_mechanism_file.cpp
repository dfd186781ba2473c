#include <random>

#include "doctest.h"
#include "test_support.hpp"

using namespace pocmob;
using RC = RelationCode;

namespace {

ParseError parse_error(std::string_view text) {
  try {
    parse_mechanism(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a ParseError");
  return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("matrix and joint-string legs describe the same topology") {
  const auto matrix = parse_mechanism(R"(mechanism up
leg 1:
  8 2 2
  2 8 2
  2 2 9
leg 2:
  8 2 2
  2 8 2
  2 2 9
platform fixed:
  8 0
  0 8
platform moving:
  9 0
  0 9
)");
  const auto strings = parse_mechanism(R"(# comment line
mechanism up

leg 1: R _|_ R _|_ P
relations:
  1 3 _|_
leg 2: R 2 R 2 P
relations:
  1 3 2
platform moving:
  9 0
  0 9
platform fixed:
  8 0
  0 8
)");
  CHECK(matrix.warnings.empty());
  CHECK(strings.warnings.empty());
  CHECK(matrix.mechanism == strings.mechanism);
  CHECK(matrix.mechanism.name == "up");
  CHECK(encode_leg(matrix.mechanism.legs[0]) == test::leg_table_matrix('a'));
}

TEST_CASE("relation tokens") {
  CHECK(relation_token(RC::Parallel) == "||");
  CHECK(relation_token(RC::Perpendicular) == "_|_");
  CHECK(relation_token(RC::Coaxial) == "/");
  CHECK(relation_token(RC::CommonPoint) == "*");
  CHECK(relation_token(RC::Coplanar) == "#");
  CHECK(relation_token(RC::Arbitrary) == "-");

  const auto m = parse_mechanism("mechanism t\nleg 1: R / R * R # R - R\nleg 2: R\n").mechanism;
  const auto& leg = m.legs[0];
  CHECK(leg.relation(0, 1) == RC::Coaxial);
  CHECK(leg.relation(1, 2) == RC::CommonPoint);
  CHECK(leg.relation(2, 3) == RC::Coplanar);
  CHECK(leg.relation(3, 4) == RC::Arbitrary);
}

TEST_CASE("warnings for defaults") {
  const auto p = parse_mechanism("mechanism w\nleg 1: R || R || R\nleg 2: R\n");
  REQUIRE(p.warnings.size() == 3);
  CHECK(p.warnings[0] == "line 2: leg 1: 1 non-adjacent joint pairs default to arbitrary");
  CHECK(p.warnings[1] == "fixed platform not given; its relations default to arbitrary");
  CHECK(p.warnings[2] == "moving platform not given; its relations default to arbitrary");
  CHECK(p.mechanism.fixed == uniform_platform(p.mechanism.legs, PlatformSide::Fixed));
}

TEST_CASE("errors carry line and column") {
  auto e = parse_error("");
  CHECK(e.line() == 1);
  CHECK(e.column() == 1);
  CHECK(e.message() == "expected 'mechanism'");
  CHECK(std::string(e.what()) == "line 1, column 1: expected 'mechanism'");

  e = parse_error("mechanism x\nleg 2: R\n");
  CHECK(e.line() == 2);
  CHECK(e.message() == "leg label 2 out of order, expected 1");

  e = parse_error("mechanism x\nleg 1:\n  8 3\n  2 8\nleg 2: R\n");
  CHECK(e.line() == 2);

  e = parse_error("mechanism x\nleg 1: R || Q\n");
  CHECK(e.line() == 2);
  CHECK(e.column() == 13);

  e = parse_error("mechanism x\nleg 1: R - R - R\nrelations:\n  1 2 ||\n");
  CHECK(e.line() == 4);

  e = parse_error("mechanism x\nleg 1: R - R - R\nrelations:\n  1 3 ||\n  3 1 _|_\n");
  CHECK(e.line() == 5);

  e = parse_error("mechanism x\nleg 1: R\nleg 2: R\nplatform fixed:\n  8 0 0\n  0 8 0\n  0 0 8\n");
  CHECK(e.line() == 4);
  CHECK(e.message().find("size mismatch") != std::string::npos);

  e = parse_error("mechanism x\nleg 1: R - R - R\nrelations:\n  2 2 ||\n");
  CHECK(e.line() == 4);
  CHECK(e.column() == 5);

  // Contradictory direction relations are well-formed text; analysis rejects them.
  const auto bad = parse_mechanism("mechanism x\nleg 1: R || R || R\nrelations:\n  1 3 _|_\nleg 2: R\n");
  CHECK_THROWS_AS(build_relation_graph(bad.mechanism), InconsistentRelations);
}

TEST_CASE("fixtures parse without errors") {
  for (const auto& name : test::fixture_names()) {
    CAPTURE(name);
    const auto p = parse_mechanism(test::read_file(test::source_path("fixtures/" + name + ".mech")));
    CHECK(validate_mechanism(p.mechanism).empty());
    CHECK(p.warnings.empty());
  }
}

TEST_CASE("property: format_mechanism round trips") {
  std::mt19937_64 rng(51);
  for (int n = 0; n < 200; ++n) {
    auto mech = test::random_mechanism(rng);
    mech.name = "random " + std::to_string(n);
    const auto text = format_mechanism(mech);
    CAPTURE(text);
    const auto p = parse_mechanism(text);
    CHECK(p.mechanism == mech);
    CHECK(p.warnings.empty());
    CHECK(format_mechanism(p.mechanism) == text);
  }
}
