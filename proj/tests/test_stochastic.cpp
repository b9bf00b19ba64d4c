#include "doctest.h"

#include "critreg/centralizer.hpp"
#include "critreg/stochastic.hpp"

#include <cmath>

using namespace critreg;

TEST_CASE("expectation bound partial sums and closed form") {
  auto b1 = expectation_bound(2, 1.0, 60);
  CHECK(b1.partial == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b1.closed_form == doctest::Approx(1.0));

  auto bh = expectation_bound(2, 0.5, 400);
  CHECK(bh.closed_form == doctest::Approx(1.0 / (std::sqrt(2.0) - 1.0)));
  CHECK(bh.closed_form == doctest::Approx(2.41421356).epsilon(1e-6));

  auto b_one = expectation_bound(3, 0.7, 1);
  CHECK(b_one.partial == doctest::Approx(std::pow(3.0, -0.7)));
  CHECK_THROWS_AS(expectation_bound(1, 0.5, 10), std::invalid_argument);
}

TEST_CASE("omega sums: degenerate and closed-form weights") {
  auto z = omega_sum_monte_carlo(SeqWeight::zero(2), 0.5, 50, 20, 7);
  CHECK(z.mean == 0.0);
  CHECK(z.max == 0.0);

  // alpha(v) = d^{-2|v|}: every path gives sum_{n} 2^{-n} deterministically
  auto g = omega_sum_monte_carlo(SeqWeight::geometric(2), 0.5, 30, 50, 11);
  const double expect = 1.0 - std::pow(2.0, -30.0);
  CHECK(g.mean == doctest::Approx(expect).epsilon(1e-12));
  CHECK(g.max == doctest::Approx(expect).epsilon(1e-12));
  CHECK(g.std_error == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("omega sums: harmonic test weight meets the expectation bound") {
  const int n_max = 200;
  auto st = omega_sum_monte_carlo(SeqWeight::uniform_harmonic(2), 0.5, n_max, 2000, 20260809);
  auto bound = expectation_bound(2, 0.5, n_max);
  CHECK(st.mean <= bound.partial + 3.0 * st.std_error);
  CHECK(st.checkpoint_means.size() == 3);
  CHECK(st.checkpoint_means[0] <= st.checkpoint_means[1]);
  CHECK(st.checkpoint_means[1] <= st.checkpoint_means[2]);
}

TEST_CASE("omega sums: bit-identical reruns under a fixed seed") {
  auto w = SeqWeight::uniform_harmonic(2);
  auto s1 = omega_sum_monte_carlo(w, 0.5, 100, 500, 424242);
  auto s2 = omega_sum_monte_carlo(w, 0.5, 100, 500, 424242);
  CHECK(s1.mean == s2.mean);
  CHECK(s1.max == s2.max);
  CHECK(s1.std_error == s2.std_error);
  CHECK(s1.checkpoint_means == s2.checkpoint_means);

  // a path-dependent weight separates seeds (the harmonic weight only sees
  // the path length, so its sums are seed-independent by design)
  SeqWeight pathdep{2,
                    [](const std::vector<int>& v) {
                      const double n = static_cast<double>(v.size());
                      return std::pow(2.0, -2.0 * n) * (v.back() == 0 ? 1.0 : 0.5);
                    },
                    1.0};
  auto p1 = omega_sum_monte_carlo(pathdep, 0.5, 100, 500, 424242);
  auto p2 = omega_sum_monte_carlo(pathdep, 0.5, 100, 500, 424243);
  CHECK(p1.mean != p2.mean);
}

TEST_CASE("omega sums rejects overweight measures") {
  SeqWeight bad{2, [](const std::vector<int>&) { return 1.0; }, 2.0};
  CHECK_THROWS_AS(omega_sum_monte_carlo(bad, 0.5, 10, 10, 1), std::invalid_argument);
}

TEST_CASE("ping orbit sums on the crossed two-bump pair") {
  GenSet gens = two_bump_crossed_gens();
  const IntervalQ u0 = two_bump_u0();
  auto rep = ping_orbit_sums(gens.at("g1"), gens.at("g2"), u0, 0.5, 60, 200, 99, 6);
  CHECK(rep.disjoint_ok);
  CHECK(rep.words_checked == 126);  // 2 + 4 + ... + 64
  CHECK(rep.max_level_mass <= 1.0);
  CHECK(rep.total_mass <= 1.0);  // all images pairwise disjoint inside [0,1]
  auto bound = expectation_bound(2, 0.5, 60);
  CHECK(rep.stats.mean <= bound.partial + 3.0 * rep.stats.std_error);
  CHECK(!ping_report_csv(rep).empty());

  // configuration check: swapping the roles must throw
  CHECK_THROWS_AS(ping_orbit_sums(gens.at("g2"), gens.at("g1"), u0, 0.5, 10, 10, 1, 3),
                  std::invalid_argument);
}
