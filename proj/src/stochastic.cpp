#include "critreg/stochastic.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace critreg {

namespace {

// splitmix64: stable, seedable, platform-independent
struct SplitMix {
  std::uint64_t s;
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int letter(int d) { return static_cast<int>(next() % static_cast<std::uint64_t>(d)); }
};

}  // namespace

SeqWeight SeqWeight::zero(int d) {
  return SeqWeight{d, [](const std::vector<int>&) { return 0.0; }, 0.0};
}

SeqWeight SeqWeight::geometric(int d) {
  return SeqWeight{d,
                   [d](const std::vector<int>& v) {
                     return std::pow(static_cast<double>(d), -2.0 * static_cast<double>(v.size()));
                   },
                   // sum_n d^n * d^{-2n} = sum_n d^{-n} = 1/(d-1)
                   1.0 / (d - 1.0)};
}

SeqWeight SeqWeight::uniform_harmonic(int d) {
  return SeqWeight{d,
                   [d](const std::vector<int>& v) {
                     const double n = static_cast<double>(v.size());
                     return std::pow(static_cast<double>(d), -n) / (n * (n + 1.0));
                   },
                   1.0};  // sum_n 1/(n(n+1)) = 1 exactly
}

OmegaStats omega_sum_monte_carlo(const SeqWeight& alpha, double tau, int n_max, int trials,
                                 std::uint64_t seed) {
  if (!(tau > 0 && tau <= 1)) throw std::invalid_argument("omega_sum: tau outside (0,1]");
  if (trials < 1 || n_max < 1) throw std::invalid_argument("omega_sum: bad trials/n_max");
  if (alpha.d < 2) throw std::invalid_argument("omega_sum: alphabet size must be >= 2");
  if (alpha.total_mass > 1.0 + 1e-12)
    throw std::invalid_argument("omega_sum: weight mass exceeds 1");

  OmegaStats st;
  st.trials = trials;
  st.checkpoint_means.assign(3, 0.0);
  const int cp1 = std::max(1, n_max / 4), cp2 = std::max(1, n_max / 2);
  double sum = 0.0, sumsq = 0.0;
  for (int t = 0; t < trials; ++t) {
    SplitMix rng{seed ^ (0x5851f42d4c957f2dull * static_cast<std::uint64_t>(t + 1))};
    std::vector<int> omega;
    double acc = 0.0;
    double at_cp1 = 0.0, at_cp2 = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      omega.push_back(rng.letter(alpha.d));
      const double a = alpha.weight(omega);
      if (a > 0) acc += std::pow(a, tau);
      if (n == cp1) at_cp1 = acc;
      if (n == cp2) at_cp2 = acc;
    }
    sum += acc;
    sumsq += acc * acc;
    st.max = std::max(st.max, acc);
    st.checkpoint_means[0] += at_cp1;
    st.checkpoint_means[1] += at_cp2;
    st.checkpoint_means[2] += acc;
  }
  st.mean = sum / trials;
  for (auto& c : st.checkpoint_means) c /= trials;
  const double var = std::max(0.0, sumsq / trials - st.mean * st.mean);
  st.std_error = std::sqrt(var / trials);
  return st;
}

ExpectationBound expectation_bound(int d, double tau, int n_max) {
  if (d < 2 || !(tau > 0)) throw std::invalid_argument("expectation_bound: need d >= 2, tau > 0");
  ExpectationBound b;
  const double q = std::pow(static_cast<double>(d), -tau);
  double term = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    term *= q;
    b.partial += term;
  }
  b.closed_form = q / (1.0 - q);
  return b;
}

PingReport ping_orbit_sums(const PLHomeo& g1, const PLHomeo& g2, const IntervalQ& u0, double tau,
                           int n_max, int trials, std::uint64_t seed, int exact_len) {
  // configuration: g2 U0 < U0 < g1 U0
  const IntervalQ i1 = image_interval(g1, u0);
  const IntervalQ i2 = image_interval(g2, u0);
  if (!(i2.hi <= u0.lo && u0.hi <= i1.lo))
    throw std::invalid_argument("ping_orbit_sums: configuration g2 U0 < U0 < g1 U0 violated");

  PingReport rep;

  // exact disjointness over all positive words of length <= exact_len
  std::vector<IntervalQ> images;
  std::vector<IntervalQ> frontier{u0};
  for (int n = 1; n <= exact_len; ++n) {
    std::vector<IntervalQ> next;
    Rat level_mass(0);
    next.reserve(frontier.size() * 2);
    for (const auto& iv : frontier) {
      next.push_back(image_interval(g1, iv));
      next.push_back(image_interval(g2, iv));
    }
    for (const auto& iv : next) level_mass += iv.length();
    rep.max_level_mass = std::max(rep.max_level_mass, rat_to_double(level_mass));
    images.insert(images.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  rep.words_checked = static_cast<int>(images.size());
  Rat total(0);
  for (const auto& iv : images) total += iv.length();
  rep.total_mass = rat_to_double(total);
  for (size_t i = 0; i < images.size() && rep.disjoint_ok; ++i)
    for (size_t j = i + 1; j < images.size(); ++j)
      if (open_intersects(images[i], images[j])) {
        rep.disjoint_ok = false;
        break;
      }

  // sampled positive-word length sums (letters applied leftmost-last, i.e.
  // p(s_1..s_n) = |s_n ... s_1 U0|)
  if (!(tau > 0 && tau <= 1)) throw std::invalid_argument("ping_orbit_sums: tau outside (0,1]");
  rep.stats.trials = trials;
  const int cp1 = std::max(1, n_max / 4), cp2 = std::max(1, n_max / 2);
  double sum = 0.0, sumsq = 0.0;
  for (int t = 0; t < trials; ++t) {
    SplitMix rng{seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(t + 1))};
    IntervalQ iv = u0;
    double acc = 0.0;
    PingRow row;
    row.trial = static_cast<std::uint64_t>(t);
    for (int n = 1; n <= n_max; ++n) {
      iv = image_interval(rng.letter(2) == 0 ? g1 : g2, iv);
      acc += std::pow(rat_to_double(iv.length()), tau);
      if (n == cp1) row.sum_q1 = acc;
      if (n == cp2) row.sum_q2 = acc;
    }
    row.sum_final = acc;
    rep.rows.push_back(row);
    sum += acc;
    sumsq += acc * acc;
    rep.stats.max = std::max(rep.stats.max, acc);
  }
  rep.stats.mean = sum / trials;
  const double var = std::max(0.0, sumsq / trials - rep.stats.mean * rep.stats.mean);
  rep.stats.std_error = std::sqrt(var / trials);
  rep.stats.checkpoint_means = {0.0, 0.0, 0.0};
  for (const auto& row : rep.rows) {
    rep.stats.checkpoint_means[0] += row.sum_q1 / trials;
    rep.stats.checkpoint_means[1] += row.sum_q2 / trials;
    rep.stats.checkpoint_means[2] += row.sum_final / trials;
  }
  return rep;
}

std::string ping_report_csv(const PingReport& r) {
  std::ostringstream os;
  os << "trial,sum_q1,sum_q2,sum_final\n";
  char buf[256];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g,%.17g\n",
                  static_cast<unsigned long long>(row.trial), row.sum_q1, row.sum_q2,
                  row.sum_final);
    os << buf;
  }
  return os.str();
}

}  // namespace critreg
