#pragma once

#include "critreg/pl_homeo.hpp"
#include "critreg/words.hpp"

namespace critreg {

// Exact homeomorphism of [0,1] commuting with a fixed-point-free PL period
// map: a PL patch supported strictly inside the fundamental domain
// [x0, P(x0)) is extended to every P-translate of the domain by exact
// equivariance, g(x) = P^m(patch(P^{-m} x)). These are the maps appearing on
// the invariant side of centralizer configurations; they have infinitely many
// breakpoints as global maps but stay exactly evaluable at rationals.
class PeriodizedPL {
 public:
  // period must be fixed-point free on (0,1); patch must be supported inside
  // the open fundamental domain. Throws std::invalid_argument otherwise.
  PeriodizedPL(PLHomeo period, Rat x0, PLHomeo patch);

  const PLHomeo& period() const { return period_; }
  const Rat& x0() const { return x0_; }
  const PLHomeo& patch() const { return patch_; }

  Rat operator()(const Rat& x) const;
  bool is_identity() const { return patch_.is_identity(); }

  PeriodizedPL inverse() const { return PeriodizedPL(period_, x0_, patch_.inverse()); }

  // Same period and anchor required; the patches compose as plain PL maps.
  friend PeriodizedPL compose(const PeriodizedPL& f, const PeriodizedPL& g);

  friend bool operator==(const PeriodizedPL& a, const PeriodizedPL& b) {
    return a.period_ == b.period_ && a.x0_ == b.x0_ && a.patch_ == b.patch_;
  }

 private:
  PLHomeo period_;   // normalized to move right: period_(x) > x on (0,1)
  PLHomeo inv_;      // cached inverse of period_
  Rat x0_, x1_;      // fundamental domain [x0_, x1_), x1_ = period_(x0_)
  PLHomeo patch_;
};

// The action carrier used by the centralizer-configuration operations:
// named PL patches over one common period map, all exactly commuting with it.
struct PeriodizedAction {
  PLHomeo period;
  Rat x0;
  GenSet patches;
  int word_budget = 3;

  PeriodizedPL lift(const std::string& name) const;
};

// True iff c equals period^j for some 0 < |j| <= max_power, exactly.
std::optional<long long> as_period_power(const PLHomeo& period, const PLHomeo& c,
                                         int max_power = 16);

}  // namespace critreg
