#include <random>

#include "doctest.h"
#include "pocmob/leg_analysis.hpp"
#include "test_support.hpp"

using namespace pocmob;

TEST_CASE("topology-matrix table legs give their printed POC") {
  for (char row : {'a', 'b', 'c', 'd'}) {
    CAPTURE(row);
    const auto leg = decode_leg(test::leg_table_matrix(row));
    const auto lp = analyze_leg(leg, build_leg_relation_graph(leg));
    const auto [t, r] = test::leg_table_poc(row);
    CHECK(lp.f == static_cast<int>(leg.size()));
    CHECK(std::vector<int>(lp.matrix.t.begin(), lp.matrix.t.end()) == test::row6(t));
    CHECK(std::vector<int>(lp.matrix.r.begin(), lp.matrix.r.end()) == test::row6(r));
  }
}

TEST_CASE("leg trace keeps one step per segment and the OR before normalization") {
  const auto leg = decode_leg(test::leg_table_matrix('d'));
  const auto lp = analyze_leg(leg, build_leg_relation_graph(leg));
  REQUIRE(lp.trace.size() == lp.segments.size());
  CHECK(lp.initial.t == std::array<int, 6>{0, 0, 1, 0, 0, 0});
  CHECK(lp.initial.r == std::array<int, 6>{1, 1, 0, 1, 1, 1});
  CHECK(lp.xi_t == 3);
  CHECK(lp.xi_r == 3);
}

TEST_CASE("leg POC ranks agree with the numeric twist space") {
  std::mt19937_64 rng(21);
  int legs = 0;
  for (int n = 0; n < 60; ++n) {
    const auto mech = test::random_mechanism(rng, 3);
    const auto g = build_relation_graph(mech);
    const auto inst = instantiate_geometry(mech, g, 500 + n);
    for (const auto& leg : mech.legs) {
      CAPTURE(encode_leg(leg));
      const auto lp = analyze_leg(leg, g);
      const auto space = leg_twist_space(leg, inst);
      const int rot = numeric_rank(space.screws.topRows(3), kRankTolerance, nullptr, 1.0);
      CHECK(lp.xi() == space.rank);
      CHECK(lp.xi_r == rot);
      ++legs;
    }
  }
  CHECK(legs > 100);
}
