#pragma once

#include <optional>
#include <string>
#include <vector>

namespace critreg {

// Parameter tuple of the nested-action construction. All of p, q, qprime, r
// exceed 1 and tau lies in (0,1).
struct Params {
  double tau = 0.0;
  double p = 0.0, q = 0.0, qprime = 0.0, r = 0.0;
};

// Per-condition slacks; a tuple is feasible iff every slack is >= 0, with the
// strict conditions requiring > 0:
//   (A)  r tau <= q'/q < 1        -> a_left (>=0), a_right (>0)
//   (B)  1/p + 1/q + 1/r < 1      -> b (>0)
//   (C)  1/q' + 1/r < 1           -> c (>0)
//   (D)  tau p (1 - 1/r) <= 1     -> d (>=0)
//   (E)  tau q' (1 - 1/r) <= 1    -> e (>=0)
struct Residuals {
  double a_left = 0.0, a_right = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0;
  bool feasible() const {
    return a_left >= 0 && a_right > 0 && b > 0 && c > 0 && d >= 0 && e >= 0;
  }
};

Residuals check_conditions(const Params& params);

// (tau/(1-tau), min((1-tau)q - 1, ((1-tau^2)q - tau)/(tau^2 q + tau))).
// Nonempty iff lower < upper.
std::pair<double, double> consolidated_window(double tau, double q);

inline double window_limit(double tau) { return (1.0 - tau * tau) / (tau * tau); }

// Deterministic reconstruction over the geometric q-grid {2,4,...,2^20}:
// q/p at the window midpoint, r from the (D)-tight value with an adaptive
// margin, q' from the intersection of its (A),(C),(E) bounds. Every returned
// tuple re-validates through check_conditions.
std::optional<Params> find_feasible(double tau);

// Bisection of the find_feasible verdict; returns the threshold within
// tolerance. The true boundary is the positive root of tau^2 + tau - 1.
double sup_tau(double tolerance);

struct RegionRow {
  double tau = 0.0, q = 0.0, lower = 0.0, upper = 0.0;
  bool nonempty = false;
};

std::vector<RegionRow> emit_region(const std::vector<double>& tau_grid,
                                   const std::vector<double>& q_grid);
std::string region_csv(const std::vector<RegionRow>& rows);

}  // namespace critreg
