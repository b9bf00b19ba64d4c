#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace critreg {

// Grid maximum of the Hölder quotient |f(x)-f(y)|/|x-y|^tau with the argmax
// pair kept as a witness. Always a lower bound for the true norm.
struct HolderEstimate {
  double tau = 0.0;
  double value = 0.0;
  double x = 0.0, y = 0.0;
};

HolderEstimate holder_norm(const std::vector<std::pair<double, double>>& samples, double tau);

// Samples fn on [lo,hi], doubling the grid until the estimate stabilizes
// within 1% (or the cap is hit). Still a lower bound.
HolderEstimate holder_norm_of(const std::function<double(double)>& fn, double lo, double hi,
                              double tau, int initial_grid = 256, int max_grid = 4096);

struct DisplacementReport {
  bool all_hold = true;
  int violations = 0;
  double worst_margin = 0.0;  // max of |f(x)-x| / (1.01 est |x-a|^{1+tau})
  double est_deriv_holder = 0.0;
  int points = 0;
};

// Checks |f(x)-x| <= 1.01 * est([Df]_tau) * |x-a|^{1+tau} on a grid over
// (a,b), where the derivative-Hölder estimate comes from the df samples.
// Requires f(a)=a up to roundoff.
DisplacementReport check_displacement(const std::function<double(double)>& f,
                                      const std::function<double(double)>& df, double a, double b,
                                      double tau, int grid);

// Smallest k >= 2 with tau (1+tau)^{k-2} >= 1, and the ceil(1 + 1/tau) bound.
int min_k_for_tau(double tau);
int k_tau_lower_bound(double tau);

// ---------------------------------------------------------------------------
// Commuting-pair sequence diagnostic: orbit gaps L_i = a^i z - a^i y for a
// t-fixed y, displacements M_i = t a^i z - a^i z, the per-i displacement
// inequality, the ratio dichotomy, and a power-law summability heuristic for
// sum L_i^tau.

struct Z2Row {
  int i = 0;
  double L = 0.0, M = 0.0;
  double ratio = 0.0;           // M_i / L_i
  double disp_rhs = 0.0;        // 1.01 [Dt]_tau L_i^{1+tau}
  double partial_k = 0.0;       // running sum of L_j^tau
};

struct Z2Report {
  std::vector<Z2Row> rows;
  double est_dt_holder = 0.0;      // grid estimate of [Dt]_tau
  double est_dloga_holder = 0.0;   // grid estimate of the log-derivative of a
  double k_partial = 0.0;          // partial sum of L_i^tau
  double fitted_exponent = 0.0;    // log-log slope of L_i^tau over the tail
  bool hypothesis_summable = false;
  double ratio_lower_bound = 0.0;  // e^{-A} M_0/L_0 with A from the estimates
  int conflict_at = -1;            // first i with ratio below the bound
  bool displacement_ok = true;     // M_i <= 1.01 [Dt]_tau L_i^{1+tau} for all i
  double m_sum = 0.0;              // sum of M_j^tau
  double m_sum_bound = 0.0;        // 1.01^tau [Dt]_tau^tau sum L_j^{tau(1+tau)}
  bool m_sum_ok = true;
  // any horn of the dichotomy conflicting with the estimated norms
  bool contradiction_flagged() const {
    return !displacement_ok || !m_sum_ok || conflict_at >= 0;
  }
};

Z2Report z2_sequence_diagnostic(const std::function<double(double)>& a_map,
                                const std::function<double(double)>& a_deriv,
                                const std::function<double(double)>& t_map,
                                const std::function<double(double)>& t_deriv, double y, double z,
                                double tau, int n_max,
                                const std::vector<std::pair<double, double>>& sample_regions);

std::string z2_report_csv(const Z2Report& r);

}  // namespace critreg
