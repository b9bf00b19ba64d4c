#pragma once

#include "critreg/interval.hpp"
#include "critreg/rational.hpp"

#include <utility>
#include <vector>

namespace critreg {

// Orientation-preserving piecewise linear bijection of [0,1] with exact
// rational breakpoints. The breakpoint list always contains (0,0) and (1,1),
// is strictly increasing in both coordinates, and is canonical: interior
// collinear points are pruned, so two PLHomeo values are equal as maps iff
// their breakpoint lists are equal.
class PLHomeo {
 public:
  using Point = std::pair<Rat, Rat>;

  PLHomeo();  // identity

  // Validates endpoints, monotonicity and bijectivity; prunes collinear points.
  static PLHomeo from_breakpoints(std::vector<Point> pts);

  const std::vector<Point>& breakpoints() const { return bp_; }

  Rat operator()(const Rat& x) const;  // throws std::domain_error off [0,1]

  // Slope of the segment containing x, taking the segment to the right of x
  // when x is a breakpoint (right derivative); left slope at x = 1.
  Rat slope_right(const Rat& x) const;

  bool is_identity() const;

  PLHomeo inverse() const;

  // Maximal open intervals where f(x) != x, in increasing order.
  std::vector<IntervalQ> support_components() const;

  // Agrees with *this on J, identity elsewhere. Requires f(J)=J exactly,
  // i.e. both endpoints fixed; throws std::invalid_argument otherwise.
  PLHomeo restrict_to(const IntervalQ& J) const;

  friend bool operator==(const PLHomeo& a, const PLHomeo& b) { return a.bp_ == b.bp_; }

 private:
  std::vector<Point> bp_;
};

// result(x) = f(g(x)), exactly; breakpoints are g's breakpoints together with
// g-preimages of f's breakpoints, collinear points pruned.
PLHomeo compose(const PLHomeo& f, const PLHomeo& g);

PLHomeo pl_power(const PLHomeo& f, long long n);  // f^n, n may be negative

inline PLHomeo commutator(const PLHomeo& f, const PLHomeo& g) {
  return compose(compose(f, g), compose(f.inverse(), g.inverse()));
}

IntervalQ image_interval(const PLHomeo& f, const IntervalQ& iv);

bool commutes(const PLHomeo& f, const PLHomeo& g);

// Exact open support: union of support components, as interval list.
bool supports_intersect(const PLHomeo& f, const PLHomeo& g);

// Standard generating pair of Thompson's F:
//   A: x/2 on [0,1/2], x-1/4 on [1/2,3/4], 2x-1 on [3/4,1]
//   B: identity on [0,1/2], the [1/2,1]-rescaled copy of A.
PLHomeo thompson_a();
PLHomeo thompson_b();

// Dyadic breakpoints and power-of-two slopes (membership test for F).
bool is_dyadic_f_element(const PLHomeo& f);

// Conjugate of f by the affine map [0,1] -> [lo,hi]; the result is supported
// inside [lo,hi] and is the "squeezed copy" used for the F_-/F_+ subgroups.
PLHomeo squeeze_into(const PLHomeo& f, const Rat& lo, const Rat& hi);

std::string pl_to_string(const PLHomeo& f);

}  // namespace critreg
