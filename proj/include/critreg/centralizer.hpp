#pragma once

#include "critreg/dynamics.hpp"
#include "critreg/nesting.hpp"
#include "critreg/periodized.hpp"

namespace critreg {

// Two-chain of the action whose union meets the support of a centralizing
// element: the configuration the Centralizer-Conradian lemma excludes for
// C^{1,tau} actions (legal in C^0, where these witnesses live).
struct CentralizerCertificate {
  TwoChain chain;
  IntervalQ c_component;  // the support component of c meeting the union
};

// c must commute with every generator, verified exactly; throws otherwise.
std::optional<CentralizerCertificate> centralizer_obstruction(const PLHomeo& c,
                                                              const ActionSpec& action);

// Periodized variant: c must be an exact power of the action's period map
// (commutation is then structural); the two-chain search runs on the patches.
std::optional<CentralizerCertificate> centralizer_obstruction(const PLHomeo& c,
                                                              const PeriodizedAction& action);

// Follows the nesting-extraction procedure: sample iterated commutators of
// short words as a derived-series proxy, pick g_k with a displacement pair
// J_{k-1} ⊋ J_k, climb outward through displacing elements, then drive the
// sequence with the first power of c moving J_1 off itself. Absence means
// "nothing found at this budget". Throws if c has a fixed point spanning the
// action's support interval or fails the centralizing precondition.
std::optional<NestingWitness> extract_nesting_witness(const ActionSpec& action, int k,
                                                      const PLHomeo& c);
std::optional<NestingWitness> extract_nesting_witness(const PeriodizedAction& action, int k,
                                                      const PLHomeo& c);

// ---------------------------------------------------------------------------
// Hand-built models.

// Two overlapping PL bumps with supports (0,3/4) and (1/4,1), arranged so the
// intermediate interval U0 = (15/32,17/32) satisfies g2 U0 < U0 < g1 U0.
GenSet two_bump_crossed_gens();
IntervalQ two_bump_u0();

// Period-equivariant action with three nested bump patches generating a
// wreath-type group of derived length 3 (all component pairs nested or
// disjoint), centralized by the translation-like period map.
PeriodizedAction wreath_model();

// Period-equivariant copy of the crossed two-bump pair, centralized by the
// period map whose support covers the chain.
PeriodizedAction crossed_center_model();

// The direct (k,1)-nesting witness data: translation-like PL map c with
// c J1 ∩ J1 = ∅ and an equivariant swap supported exactly on J1.
NestingWitness nesting_example_witness();

}  // namespace critreg
