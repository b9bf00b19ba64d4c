#include "doctest.h"

#include "critreg/feasibility.hpp"

#include <cmath>
#include <stdexcept>
#include <random>

using namespace critreg;

TEST_CASE("condition residuals by direct substitution") {
  Residuals r = check_conditions(Params{0.5, 4.0, 4.0, 4.0, 4.0});
  CHECK(r.b == doctest::Approx(0.25));                  // 1 - 3/4
  CHECK(r.d == doctest::Approx(-0.5));                  // 1 - 0.5*4*(3/4)
  CHECK(!r.feasible());

  // small tau degenerates toward feasibility on (A)-left, (D), (E)
  Residuals s = check_conditions(Params{1e-6, 4.0, 4.0, 3.5, 2.0});
  CHECK(s.a_left > 0.0);
  CHECK(s.d > 0.0);
  CHECK(s.e > 0.0);

  CHECK_THROWS_AS(check_conditions(Params{0.5, 0.9, 4.0, 4.0, 4.0}), std::invalid_argument);
}

TEST_CASE("consolidated window values") {
  // tau = 0.6: large-q upper approaches (1-tau^2)/tau^2 = 16/9 above lower 1.5
  auto [lo6, hi6] = consolidated_window(0.6, std::ldexp(1.0, 20));
  CHECK(lo6 == doctest::Approx(1.5));
  CHECK(hi6 > lo6);
  CHECK(window_limit(0.6) == doctest::Approx(16.0 / 9.0));

  // tau = 0.63: the window is empty for every q (sup of upper < lower)
  CHECK(window_limit(0.63) == doctest::Approx(1.51952).epsilon(1e-4));
  CHECK(0.63 / 0.37 == doctest::Approx(1.7027).epsilon(1e-4));
  for (int e = 1; e <= 20; ++e) {
    auto [lo, hi] = consolidated_window(0.63, std::ldexp(1.0, e));
    CHECK(!(lo < hi));
  }

  // the q->infinity limit closes exactly at the positive root of t^2+t-1
  const double root = (-1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(window_limit(root) == doctest::Approx(root / (1.0 - root)).epsilon(1e-12));
}

TEST_CASE("window upper bound is numerically increasing in q") {
  for (double tau : {0.1, 0.3, 0.5, 0.6, 0.61, 0.8}) {
    double prev = -1e300;
    for (int e = 1; e <= 20; ++e) {
      auto [lo, hi] = consolidated_window(tau, std::ldexp(1.0, e));
      (void)lo;
      CHECK(hi > prev);
      prev = hi;
    }
  }
}

TEST_CASE("find_feasible reconstructs full tuples") {
  auto t6 = find_feasible(0.60);
  REQUIRE(t6.has_value());
  Residuals r6 = check_conditions(*t6);
  CHECK(r6.feasible());
  CHECK(r6.a_left >= 0.0);
  CHECK(r6.d >= 0.0);
  CHECK(r6.e >= 0.0);

  CHECK(!find_feasible(0.63).has_value());

  auto t1 = find_feasible(0.1);
  REQUIRE(t1.has_value());
  CHECK(check_conditions(*t1).feasible());
}

TEST_CASE("property: feasible tuples re-validate across the range") {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> taus(0.02, 0.615);
  for (int trial = 0; trial < 50; ++trial) {
    const double tau = taus(rng);
    auto par = find_feasible(tau);
    CAPTURE(tau);
    REQUIRE(par.has_value());
    CHECK(check_conditions(*par).feasible());
  }
}

TEST_CASE("golden-ratio threshold") {
  const double root = 0.61803398874989485;
  CHECK(find_feasible(0.5).has_value());
  CHECK(!find_feasible(0.7).has_value());
  const double s3 = sup_tau(1e-3);
  CHECK(std::fabs(s3 - root) <= 1.5e-3);
  const double s1 = sup_tau(1e-1);
  CHECK(std::fabs(s1 - root) <= 1e-1);
  const double s4 = sup_tau(1e-4);
  CHECK(std::fabs(s4 - root) <= 2e-4);
}

TEST_CASE("region table rows") {
  auto rows = emit_region({0.6, 0.63, 0.99}, {1000.0, std::ldexp(1.0, 20)});
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].nonempty);            // (0.6, 1000)
  CHECK(!rows[2].nonempty);           // (0.63, *)
  CHECK(!rows[3].nonempty);
  CHECK(!rows[4].nonempty);           // (0.99, *): lower = 99
  CHECK(rows[4].lower == doctest::Approx(99.0));
  CHECK_THROWS_AS(emit_region({}, {2.0}), std::invalid_argument);
  auto csv = region_csv(rows);
  CHECK(csv.rfind("tau,q,lower,upper,feasible\n", 0) == 0);
}
