#pragma once

#include "critreg/pl_homeo.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace critreg {

// Weight on the space of nonempty finite sequences over {1..d} (indices here
// are 0-based). Nonnegative, total mass at most 1 (sub-probability weights
// are accepted; the configuration can always be rescaled).
struct SeqWeight {
  int d = 2;
  std::function<double(const std::vector<int>&)> weight;
  double total_mass = 1.0;

  static SeqWeight zero(int d);
  // alpha(v) = d^{-2|v|}; per-branch geometric, mass < 1.
  static SeqWeight geometric(int d);
  // alpha(v) = d^{-|v|} / (|v| (|v|+1)); exact probability measure.
  static SeqWeight uniform_harmonic(int d);
};

struct OmegaStats {
  int trials = 0;
  double mean = 0.0;
  double max = 0.0;
  double std_error = 0.0;
  std::vector<double> checkpoint_means;  // partial sums at n_max/4, n_max/2, n_max
};

// For each trial, sample a uniform letter path and accumulate
// sum_{n<=n_max} alpha(omega_n)^tau. Deterministic for a fixed seed.
OmegaStats omega_sum_monte_carlo(const SeqWeight& alpha, double tau, int n_max, int trials,
                                 std::uint64_t seed);

// Partial sum and closed form of sum_n d^{-n tau}.
struct ExpectationBound {
  double partial = 0.0;     // sum_{n=1..n_max}
  double closed_form = 0.0; // d^{-tau} / (1 - d^{-tau})
};
ExpectationBound expectation_bound(int d, double tau, int n_max);

struct PingRow {
  std::uint64_t trial = 0;
  double sum_q1 = 0.0, sum_q2 = 0.0, sum_final = 0.0;
};

struct PingReport {
  bool disjoint_ok = true;          // exact pairwise disjointness of w U0
  int words_checked = 0;
  double max_level_mass = 0.0;      // max over n of sum_{|w|=n} |w U0|
  double total_mass = 0.0;          // sum over all checked words (disjoint => <= 1)
  OmegaStats stats;                  // sampled positive-word length sums
  std::vector<PingRow> rows;
};

// Exact ping verification for the two-chain configuration
// g2 U0 < U0 < g1 U0: pairwise disjointness of w U0 over all positive words
// of length <= exact_len, plus Monte Carlo statistics of the length sums.
// Throws if the configuration is violated.
PingReport ping_orbit_sums(const PLHomeo& g1, const PLHomeo& g2, const IntervalQ& u0, double tau,
                           int n_max, int trials, std::uint64_t seed, int exact_len = 6);

std::string ping_report_csv(const PingReport& r);

}  // namespace critreg
