#pragma once

#include "critreg/words.hpp"

#include <optional>
#include <variant>

namespace critreg {

// A finitely generated PL action together with the search radius for all
// semi-decisions. Every "find" below is sound (witnesses are exact) and
// complete only up to word_budget.
struct ActionSpec {
  GenSet generators;
  int word_budget = 3;
};

struct TwoChain {
  IntervalQ J1, J2;  // J1.lo < J2.lo < J1.hi < J2.hi
  GroupWord g1, g2;  // J_i is a support component of g_i's evaluation
};

struct BoundaryMovedData {
  IntervalQ J;  // a support component of f with g(∂J) ∩ J nonempty
};
struct PingData {
  Rat a, b;  // f(a)=a < f(b) < g(a) < g(b)=b
};

struct CrossedPairWitness {
  GroupWord f, g;
  std::variant<BoundaryMovedData, PingData> data;
};

enum class CrossedVariant { Auto, BoundaryMoved, Ping };

struct SupportClassification {
  std::vector<std::pair<IntervalQ, GroupWord>> nested;
  std::vector<IntervalQ> crossed_candidates;
  // per-candidate: contained in the union of two-chains of generator components
  std::vector<bool> candidate_covered;
  bool all_candidates_covered = true;
};

struct ConradianVerdict {
  std::optional<TwoChain> witness;  // present => non-Conradian
  int budget = 0;
  bool non_conradian() const { return witness.has_value(); }
};

std::optional<TwoChain> find_two_chain(const ActionSpec& action);

std::optional<CrossedPairWitness> find_crossed_pair(const ActionSpec& action,
                                                    CrossedVariant variant = CrossedVariant::Auto);

// Exact re-validation of witnesses against the named generators.
bool validate_two_chain(const TwoChain& tc, const GenSet& gens);
bool validate_crossed_pair(const CrossedPairWitness& w, const GenSet& gens);

ConradianVerdict conradian_diagnostic(const ActionSpec& action);

bool is_overlapping_pair(const PLHomeo& f, const PLHomeo& g);

bool check_nested_or_disjoint(const PLHomeo& f, const PLHomeo& g);

SupportClassification classify_supports(const ActionSpec& action);

// Builds the standard copies of F supported in [0,1/2] and [1/2,1] and checks
// exactly that commutators from the two copies have disjoint supports, with
// every commutator support inside the owning half.
bool f_disjoint_commutators_check(int budget = 3);

}  // namespace critreg
