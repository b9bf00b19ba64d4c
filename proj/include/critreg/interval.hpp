#pragma once

#include "critreg/rational.hpp"

#include <compare>
#include <string>
#include <vector>

namespace critreg {

// Interval with exact rational endpoints. Support components are open;
// block/source intervals are closed. Openness is carried but most of the
// combinatorics below only needs the endpoints.
struct IntervalQ {
  Rat lo, hi;
  bool lo_open = true;
  bool hi_open = true;

  Rat length() const { return hi - lo; }
  bool contains(const Rat& x) const {
    if (x < lo || x > hi) return false;
    if (x == lo) return !lo_open;
    if (x == hi) return !hi_open;
    return true;
  }
  bool interior_contains(const Rat& x) const { return lo < x && x < hi; }

  friend bool operator==(const IntervalQ& a, const IntervalQ& b) {
    return a.lo == b.lo && a.hi == b.hi && a.lo_open == b.lo_open && a.hi_open == b.hi_open;
  }
};

inline IntervalQ open_iv(Rat lo, Rat hi) { return IntervalQ{std::move(lo), std::move(hi), true, true}; }
inline IntervalQ closed_iv(Rat lo, Rat hi) { return IntervalQ{std::move(lo), std::move(hi), false, false}; }

// Comparisons below treat intervals as open (the support-component case):
// shared endpoints do not count as intersection.
inline bool open_disjoint(const IntervalQ& a, const IntervalQ& b) {
  return a.hi <= b.lo || b.hi <= a.lo;
}
inline bool open_intersects(const IntervalQ& a, const IntervalQ& b) { return !open_disjoint(a, b); }

// a ⊆ b (as open intervals, endpoint ties allowed).
inline bool open_subset(const IntervalQ& a, const IntervalQ& b) {
  return b.lo <= a.lo && a.hi <= b.hi;
}

// The 2-chain predicate: the intersection is a nonempty proper subinterval of
// both. Ties on either endpoint break properness, so everything is strict.
inline bool proper_overlap(const IntervalQ& a, const IntervalQ& b) {
  const IntervalQ& l = (a.lo < b.lo) ? a : b;
  const IntervalQ& r = (a.lo < b.lo) ? b : a;
  if (a.lo == b.lo) return false;
  return l.lo < r.lo && r.lo < l.hi && l.hi < r.hi;
}

inline bool nested_or_disjoint(const IntervalQ& a, const IntervalQ& b) {
  return open_disjoint(a, b) || open_subset(a, b) || open_subset(b, a);
}

std::string interval_to_string(const IntervalQ& iv);

}  // namespace critreg
