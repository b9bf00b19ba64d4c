#pragma once

#include "critreg/periodized.hpp"

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace critreg {

// Maps carried by exact nesting witnesses. PL maps cover word elements and
// period powers; periodized maps cover the equivariant swap elements.
using ExactMap = std::variant<PLHomeo, PeriodizedPL>;

Rat exact_eval(const ExactMap& m, const Rat& x);
IntervalQ exact_image(const ExactMap& m, const IntervalQ& iv);

// Witness data for a (k,u)-nesting: maps S, strictly nested open intervals
// J1 ⊃ J2 ⊃ ... ⊃ Jk, the exponent u, a sequence prefix into S (optionally
// cycled), and per-level swap certificates naming the element of S that
// displaces w_n J_i while preserving w_n J_{i-1}.
struct NestingWitness {
  std::vector<ExactMap> maps;
  std::vector<IntervalQ> intervals;
  Rat u = Rat(1);
  std::vector<int> seq;
  bool repeat_seq = true;
  std::map<int, int> level_cert;  // level i in 2..k  ->  index into maps
};

struct NestingStepRow {
  int n = 0;
  double len_j1 = 0.0;
  double partial_sum = 0.0;
};

struct NestingReport {
  bool shape_ok = true;         // witness invariants (nesting, cert coverage)
  bool condition_ii_ok = true;  // exact per-step swap checks
  int fail_step = -1;
  int fail_level = -1;
  std::string fail_reason;
  int steps_checked = 0;
  double partial_sum = 0.0;   // sum of |w_n J1|^u over checked steps
  double tail_ratio = 0.0;    // max length ratio over the last quarter
  double tail_bound = 0.0;    // implied geometric tail of the power sums
  bool tail_certified = false;
  std::vector<NestingStepRow> rows;

  bool accepted() const { return shape_ok && condition_ii_ok; }
};

// Condition (ii) is checked exactly per step via interval images; condition
// (i) is reported as partial sums plus a geometric-ratio tail heuristic,
// never claimed as a proof of convergence.
NestingReport verify_nesting_witness(const NestingWitness& w, int n_max, double tail_tolerance);

std::string nesting_report_csv(const NestingReport& r);

// ---------------------------------------------------------------------------
// Numeric (sampled) side: witnesses over C^1 maps given by value/derivative
// callables, used for the contradiction quantities of the nesting bound.

struct C1Map {
  std::function<double(double)> f;
  std::function<double(double)> df;
};

struct NumericNestingWitness {
  std::vector<C1Map> maps;
  std::vector<std::pair<double, double>> intervals;  // J1 ⊃ ... ⊃ Jk
  double u = 1.0;
  std::vector<int> seq;
  bool repeat_seq = true;
  std::map<int, int> level_cert;
  // sampling regions for the Hölder estimates of the maps; for truncated
  // constructions these are block interiors, keeping the estimates away from
  // the truncation-boundary derivative jumps
  std::vector<std::pair<double, double>> sample_regions{{0.0, 1.0}};
};

struct KnestRow {
  int n = 0;
  double len_j1 = 0.0;
  double partial_sum = 0.0;
  double claim_lhs = 0.0, claim_rhs = 0.0;
  double deriv_bound = 0.0, deriv_observed = 0.0;
};

struct KnestReport {
  double n_const = 0.0;       // N = 1 + max_s ([s']_tau + [log s']_tau) estimates
  double n_bar = 0.0;         // N^{2^{k-2}} * sum |w_n J1|^u
  bool claim_ok = true;       // per-n interval-length claim
  int contradiction_at = -1;  // first n with observed derivative below the bound
  std::vector<KnestRow> rows;
};

// Evaluates the contradiction pair of the nesting bound on sampled data: the
// derivative at the mean-value comparison point stays above
// 1 + e^{-Nbar} |Jk|/|Jk-1| while shrinking intervals force it toward 1.
KnestReport knest_contradiction_quantities(const NumericNestingWitness& w, double tau, int n_max);

std::string knest_report_csv(const KnestReport& r);

}  // namespace critreg
