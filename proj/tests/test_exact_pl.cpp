#include "doctest.h"

#include "critreg/pl_homeo.hpp"
#include "critreg/words.hpp"

#include <random>

using namespace critreg;

namespace {

// Random PL homeomorphism through points of the k/64 grid.
PLHomeo random_pl(std::mt19937_64& rng, int max_interior = 4) {
  std::uniform_int_distribution<int> nbp(0, max_interior);
  int n = nbp(rng);
  std::vector<int> xs, ys;
  std::vector<int> pool;
  for (int i = 1; i < 64; ++i) pool.push_back(i);
  std::shuffle(pool.begin(), pool.end(), rng);
  xs.assign(pool.begin(), pool.begin() + n);
  std::shuffle(pool.begin(), pool.end(), rng);
  ys.assign(pool.begin(), pool.begin() + n);
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  std::vector<PLHomeo::Point> pts{{Rat(0), Rat(0)}};
  for (int i = 0; i < n; ++i) pts.emplace_back(Rat(xs[i], 64), Rat(ys[i], 64));
  pts.emplace_back(Rat(1), Rat(1));
  return PLHomeo::from_breakpoints(std::move(pts));
}

Rat random_rat01(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> num(0, 720);
  return Rat(num(rng), 720);
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(rat_to_string(parse_rat("3/6")) == "1/2");
  CHECK(rat_to_string(parse_rat("-4/8")) == "-1/2");
  CHECK(rat_to_string(parse_rat("7")) == "7");
  CHECK(parse_rat("1/3") == Rat(1, 3));
  CHECK_THROWS_AS(parse_rat("x/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK(is_dyadic(Rat(3, 8)));
  CHECK(!is_dyadic(Rat(1, 3)));
  CHECK(is_power_of_two(Rat(1, 4)));
  CHECK(is_power_of_two(Rat(8)));
  CHECK(!is_power_of_two(Rat(3, 4)));
}

TEST_CASE("evaluate on the standard generator") {
  const PLHomeo A = thompson_a();
  CHECK(PLHomeo{}(Rat(3, 7)) == Rat(3, 7));
  CHECK(A(Rat(1, 2)) == Rat(1, 4));
  CHECK(A(Rat(7, 8)) == Rat(3, 4));
  CHECK_THROWS_AS(A(Rat(3, 2)), std::domain_error);
}

TEST_CASE("compose and invert, exact") {
  const PLHomeo A = thompson_a();
  const PLHomeo id;
  CHECK(compose(id, A) == A);
  CHECK(compose(A, A.inverse()) == id);
  CHECK(compose(A, A)(Rat(1, 2)) == Rat(1, 8));
  CHECK(id.inverse() == id);
  CHECK(A.inverse().inverse() == A);
  CHECK(A.inverse()(Rat(1, 4)) == Rat(1, 2));
}

TEST_CASE("support components") {
  const PLHomeo A = thompson_a();
  const PLHomeo B = thompson_b();
  CHECK(PLHomeo{}.support_components().empty());

  auto sa = A.support_components();
  REQUIRE(sa.size() == 1);
  CHECK(sa[0].lo == 0);
  CHECK(sa[0].hi == 1);

  auto sb = B.support_components();
  REQUIRE(sb.size() == 1);
  CHECK(sb[0].lo == Rat(1, 2));
  CHECK(sb[0].hi == 1);
}

TEST_CASE("restrict to an invariant component") {
  const PLHomeo A = thompson_a();
  const PLHomeo B = thompson_b();
  const IntervalQ J = open_iv(Rat(1, 2), Rat(1));
  CHECK(PLHomeo{}.restrict_to(J) == PLHomeo{});
  CHECK(B.restrict_to(J) == B);
  CHECK_THROWS_AS(A.restrict_to(J), std::invalid_argument);
}

TEST_CASE("Thompson generators satisfy the membership criteria and relations") {
  const PLHomeo A = thompson_a();
  const PLHomeo B = thompson_b();
  CHECK(is_dyadic_f_element(A));
  CHECK(is_dyadic_f_element(B));

  // [AB^-1, A^-1 B A] = 1 and [AB^-1, A^-2 B A^2] = 1, exactly.
  const PLHomeo x = compose(A, B.inverse());
  const PLHomeo y1 = compose(compose(A.inverse(), B), A);
  const PLHomeo y2 = compose(compose(pl_power(A, -2), B), pl_power(A, 2));
  CHECK(commutator(x, y1).is_identity());
  CHECK(commutator(x, y2).is_identity());
}

TEST_CASE("word evaluation") {
  GenSet gens{{"a", thompson_a()}};
  CHECK(evaluate_word(GroupWord{}, gens, Rat(1, 2)) == Rat(1, 2));
  CHECK(evaluate_word(GroupWord::single("a"), gens, Rat(1, 2)) == Rat(1, 4));
  GroupWord aa_inv = GroupWord::single("a") * GroupWord::single("a", -1);
  CHECK(aa_inv.empty());
  CHECK(evaluate_word(aa_inv, gens, Rat(2, 7)) == Rat(2, 7));
  CHECK_THROWS_AS(evaluate_word(GroupWord::single("z"), gens, Rat(0)), std::invalid_argument);

  GroupWord w = GroupWord::single("a", 2);
  CHECK(w.length() == 2);
  CHECK(w.to_string() == "a^2");
  CHECK(evaluate_word(w, gens, Rat(1, 2)) == Rat(1, 8));
}

TEST_CASE("find_relation: infinite order single generator") {
  GenSet gens{{"a", thompson_a()}};
  // A^n(1/2) = 2^{-n-1} != 1/2, so no relation exists at any length.
  Rat v(1, 2);
  for (int n = 1; n <= 6; ++n) {
    v = thompson_a()(v);
    CHECK(v == Rat(1, BigInt(1) << (n + 1)));
  }
  CHECK(!find_relation(gens, 6).has_value());
}

TEST_CASE("find_relation: disjoint supports commute") {
  // Bumps on (0,1/2) and (1/2,1).
  PLHomeo f = PLHomeo::from_breakpoints(
      {{Rat(0), Rat(0)}, {Rat(1, 4), Rat(3, 8)}, {Rat(1, 2), Rat(1, 2)}, {Rat(1), Rat(1)}});
  PLHomeo g = PLHomeo::from_breakpoints(
      {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1, 2)}, {Rat(3, 4), Rat(5, 8)}, {Rat(1), Rat(1)}});
  GenSet gens{{"a", f}, {"b", g}};
  auto rel = find_relation(gens, 4);
  REQUIRE(rel.has_value());
  CHECK(rel->length() == 4);
  CHECK(word_map(*rel, gens).is_identity());
  // the commutator in some rotation/orientation
  CHECK(rel->letters().size() == 4);
}

TEST_CASE("find_relation: Thompson's F has a relation at length 10") {
  GenSet gens{{"a", thompson_a()}, {"b", thompson_b()}};
  auto rel = find_relation(gens, 10);
  REQUIRE(rel.has_value());
  CHECK(rel->length() <= 10);
  CHECK(!rel->empty());
  const PLHomeo m = word_map(*rel, gens);
  CHECK(m.is_identity());
  // identity at every generator breakpoint and 50 random rationals
  std::mt19937_64 rng(7);
  for (const auto& [name, gmap] : gens)
    for (const auto& p : gmap.breakpoints()) CHECK(evaluate_word(*rel, gens, p.first) == p.first);
  for (int i = 0; i < 50; ++i) {
    Rat x = random_rat01(rng);
    CHECK(evaluate_word(*rel, gens, x) == x);
  }
}

TEST_CASE("properties: compose/invert identities on random maps") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    PLHomeo f = random_pl(rng);
    PLHomeo g = random_pl(rng);
    CHECK(compose(f.inverse(), f).is_identity());
    for (int i = 0; i < 5; ++i) {
      Rat x = random_rat01(rng);
      CHECK(compose(f, g)(x) == f(g(x)));
    }
  }
}

TEST_CASE("properties: support components are exact") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    PLHomeo f = random_pl(rng);
    auto comps = f.support_components();
    for (size_t i = 0; i < comps.size(); ++i) {
      // endpoints are fixed or 0/1
      CHECK(f(comps[i].lo) == comps[i].lo);
      CHECK(f(comps[i].hi) == comps[i].hi);
      // midpoint moves
      Rat mid = (comps[i].lo + comps[i].hi) / 2;
      CHECK(f(mid) != mid);
      // pairwise disjoint, increasing order
      if (i > 0) CHECK(comps[i - 1].hi <= comps[i].lo);
    }
  }
}

TEST_CASE("properties: F is closed under composition (membership criteria)") {
  GenSet gens{{"a", thompson_a()}, {"b", thompson_b()}};
  int checked = 0;
  for_each_reduced_word(gens, 4, [&](const GroupWord&, const PLHomeo& m) {
    CHECK(is_dyadic_f_element(m));
    return ++checked < 250;
  });
  CHECK(checked > 0);
}
