#include "doctest.h"

#include "critreg/centralizer.hpp"
#include "critreg/periodized.hpp"
#include "test_util.hpp"

using namespace critreg;
using namespace critreg::testutil;

TEST_CASE("periodized map: exact equivariant evaluation") {
  PLHomeo period = thompson_a().inverse();
  PLHomeo patch = grid_bump(10, 11, 13, 14, 32);  // supported in (5/16, 7/16) ⊂ [1/4,1/2)
  PeriodizedPL g(period, Rat(1, 4), patch);

  CHECK(g(Rat(0)) == 0);
  CHECK(g(Rat(1)) == 1);
  // inside the fundamental domain it agrees with the patch
  CHECK(g(Rat(11, 32)) == patch(Rat(11, 32)));
  // one domain to the right: conjugated by the period
  Rat x = period(Rat(11, 32));
  CHECK(g(x) == period(patch(Rat(11, 32))));
  // far domains still evaluate exactly
  Rat y = Rat(11, 32);
  for (int i = 0; i < 7; ++i) y = period(y);
  Rat v = patch(Rat(11, 32));
  for (int i = 0; i < 7; ++i) v = period(v);
  CHECK(g(y) == v);
  // commutation with the period map is exact by construction
  for (Rat t : {Rat(11, 32), Rat(3, 8), Rat(19, 64), Rat(200, 257)}) {
    CHECK(g(period(t)) == period(g(t)));
  }
}

TEST_CASE("periodized map: group operations act on patches") {
  PLHomeo period = thompson_a().inverse();
  PLHomeo p1 = grid_bump(10, 11, 13, 14, 32);
  PLHomeo p2 = grid_bump(9, 10, 11, 15, 32);
  PeriodizedPL g(period, Rat(1, 4), p1), h(period, Rat(1, 4), p2);
  CHECK(compose(g, g.inverse()).is_identity());
  CHECK(compose(g, h).patch() == compose(p1, p2));
  CHECK_THROWS_AS(PeriodizedPL(period, Rat(1, 4), grid_bump(2, 6, 10, 30, 32)),
                  std::invalid_argument);  // patch leaves the fundamental domain
  CHECK_THROWS_AS(PeriodizedPL(grid_bump(4, 8, 12, 20, 32), Rat(1, 4), p1),
                  std::invalid_argument);  // period has interior fixed points
}

TEST_CASE("as_period_power") {
  PLHomeo period = thompson_a().inverse();
  CHECK(as_period_power(period, period) == 1);
  CHECK(as_period_power(period, pl_power(period, 3)) == 3);
  CHECK(as_period_power(period, pl_power(period, -2)) == -2);
  CHECK(!as_period_power(period, thompson_b()).has_value());
}

TEST_CASE("centralizer obstruction: PL inputs") {
  SUBCASE("identity centralizer yields nothing") {
    ActionSpec action{two_bump_crossed_gens(), 2};
    CHECK(!centralizer_obstruction(PLHomeo{}, action).has_value());
  }
  SUBCASE("non-centralizing c is rejected") {
    ActionSpec action{two_bump_crossed_gens(), 2};
    CHECK_THROWS_AS(centralizer_obstruction(thompson_a(), action), std::invalid_argument);
  }
  SUBCASE("commuting disjoint-support c sees no chain through its support") {
    GenSet gens{{"f", grid_bump(1, 3, 5, 7, 32)}, {"g", grid_bump(9, 11, 13, 15, 32)}};
    PLHomeo c = grid_bump(17, 20, 26, 31, 32);
    for (const auto& [n, gmap] : gens) REQUIRE(commutes(c, gmap));
    CHECK(!centralizer_obstruction(c, ActionSpec{gens, 3}).has_value());
  }
}

TEST_CASE("centralizer obstruction: periodized crossed model yields a certificate") {
  PeriodizedAction action = crossed_center_model();
  auto cert = centralizer_obstruction(action.period, action);
  REQUIRE(cert.has_value());
  CHECK(validate_two_chain(cert->chain, action.patches));
  // the period map is fixed-point free on (0,1): its support covers the chain
  CHECK(cert->c_component == open_iv(Rat(0), Rat(1)));

  // Conradian-looking periodized action: no certificate
  PeriodizedAction nested = wreath_model();
  CHECK(!centralizer_obstruction(nested.period, nested).has_value());
}

TEST_CASE("nesting extraction: abelian and shallow actions give nothing") {
  PLHomeo c = thompson_a();
  GenSet gens{{"p", pl_power(c, 2)}, {"q", pl_power(c, 3)}};
  CHECK(!extract_nesting_witness(ActionSpec{gens, 3}, 2, c).has_value());

  // c with a fixed point over the action's support interval is an error
  GenSet bump{{"f", grid_bump(9, 11, 13, 15, 32)}};
  PLHomeo cbad = grid_bump(1, 3, 5, 7, 32);
  CHECK_THROWS_AS(extract_nesting_witness(ActionSpec{bump, 2}, 2, cbad), std::invalid_argument);
}

TEST_CASE("nesting extraction: wreath model yields a verified (2,1) witness") {
  PeriodizedAction action = wreath_model();
  auto w = extract_nesting_witness(action, 2, action.period);
  REQUIRE(w.has_value());
  CHECK(w->intervals.size() == 2);
  CHECK(w->maps.size() == 2);
  auto rep = verify_nesting_witness(*w, 32, 1e-6);
  CHECK(rep.accepted());
  CHECK(rep.condition_ii_ok);

  // depth beyond what the budgeted derived proxy realizes
  CHECK(!extract_nesting_witness(action, 5, action.period).has_value());
}
