#include <random>

#include "doctest.h"
#include "test_support.hpp"

using namespace pocmob;

TEST_CASE("property: DOF equation and normalize fixed point") {
  const auto res = test::run_property_sweep(100, 61);
  for (const auto& m : res.messages) MESSAGE(m);
  CHECK(res.mechanisms == 100 + static_cast<int>(test::fixture_names().size()));
  CHECK(res.violations == 0);
}

TEST_CASE("property: normalize is idempotent on raw leg ORs") {
  std::mt19937_64 rng(62);
  for (int n = 0; n < 100; ++n) {
    const auto mech = test::random_mechanism(rng);
    const auto g = build_relation_graph(mech);
    for (const auto& leg : mech.legs) {
      const auto lp = analyze_leg(leg, g);
      const auto once = normalize(lp.initial, g);
      CHECK(once == lp.matrix);
      CHECK(normalize(once, g) == once);
      CHECK(once.xi_t() <= 3);
      CHECK(once.xi_r() <= 3);
      CHECK(once.xi_t() + once.xi_r() <= lp.f);
    }
  }
}

TEST_CASE("property: loop rank is symmetric in its operands") {
  std::mt19937_64 rng(63);
  for (int n = 0; n < 100; ++n) {
    const auto mech = test::random_mechanism(rng, 3);
    const auto g = build_relation_graph(mech);
    const DirectionContext ctx(g);
    const auto a = analyze_leg(mech.legs[0], g).matrix;
    const auto b = analyze_leg(mech.legs[1], g).matrix;
    CAPTURE(format_mechanism(mech));
    CHECK(loop_rank(a, b, ctx).xi() == loop_rank(b, a, ctx).xi());
    const auto ab = intersect_poc(a, b, ctx), ba = intersect_poc(b, a, ctx);
    CHECK(ab.xi_t() == ba.xi_t());
    CHECK(ab.xi_r() == ba.xi_r());
    CHECK(intersect_poc(a, a, ctx).same_entries(a));
  }
}
