#include "critreg/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace critreg {

Residuals check_conditions(const Params& par) {
  if (!(par.tau > 0 && par.tau < 1 && par.p > 1 && par.q > 1 && par.qprime > 1 && par.r > 1))
    throw std::invalid_argument("check_conditions: parameters outside their domains");
  Residuals res;
  res.a_left = par.qprime / par.q - par.r * par.tau;
  res.a_right = 1.0 - par.qprime / par.q;
  res.b = 1.0 - (1.0 / par.p + 1.0 / par.q + 1.0 / par.r);
  res.c = 1.0 - (1.0 / par.qprime + 1.0 / par.r);
  res.d = 1.0 - par.tau * par.p * (1.0 - 1.0 / par.r);
  res.e = 1.0 - par.tau * par.qprime * (1.0 - 1.0 / par.r);
  return res;
}

std::pair<double, double> consolidated_window(double tau, double q) {
  if (!(tau > 0 && tau < 1 && q > 1))
    throw std::invalid_argument("consolidated_window: need tau in (0,1), q > 1");
  const double lower = tau / (1.0 - tau);
  const double lin = (1.0 - tau) * q - 1.0;
  const double rat = ((1.0 - tau * tau) * q - tau) / (tau * tau * q + tau);
  return {lower, std::min(lin, rat)};
}

std::optional<Params> find_feasible(double tau) {
  if (!(tau > 0 && tau < 1)) throw std::invalid_argument("find_feasible: tau outside (0,1)");
  // r candidates sweep the admissible range between the (B)-tight floor and
  // the binding ceiling from (A)/(D); near the threshold only the top of the
  // range survives, so the fractions cluster there.
  static constexpr double kFracs[] = {0.5, 0.9, 0.99, 0.999, 0.9999, 0.25, 0.1};
  for (int e = 1; e <= 24; ++e) {
    const double q = std::ldexp(1.0, e);  // 2^e
    auto [lo, hi] = consolidated_window(tau, q);
    if (!(lo < hi)) continue;
    const double m = 0.5 * (lo + hi);  // q/p at the window midpoint
    const double p = q / m;
    if (!(p > 1)) continue;

    const double r_floor = 1.0 / (1.0 - 1.0 / p - 1.0 / q);  // (B), exclusive
    double r_ceil = 1.0 / tau;                                // (A) left + right
    if (tau * p > 1.0) r_ceil = std::min(r_ceil, 1.0 / (1.0 - 1.0 / (tau * p)));  // (D)
    if (!(r_floor > 1.0) || !(r_floor < r_ceil)) continue;

    for (double f : kFracs) {
      const double r = r_floor + f * (r_ceil - r_floor);
      // q' from (A) left, (C), (E), (A) right
      const double lo_q = std::max(r * tau * q, r / (r - 1.0));
      const double hi_q = std::min(1.0 / (tau * (1.0 - 1.0 / r)), q);
      if (!(lo_q < hi_q)) continue;
      const double qprime = 0.5 * (lo_q + hi_q);
      if (!(qprime > 1)) continue;
      Params par{tau, p, q, qprime, r};
      if (check_conditions(par).feasible()) return par;
    }
  }
  return std::nullopt;
}

double sup_tau(double tolerance) {
  if (!(tolerance > 0)) throw std::invalid_argument("sup_tau: tolerance must be positive");
  double lo = 0.5, hi = 0.75;
  if (!find_feasible(lo)) throw std::runtime_error("sup_tau: lower bracket infeasible");
  if (find_feasible(hi)) throw std::runtime_error("sup_tau: upper bracket feasible");
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (find_feasible(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<RegionRow> emit_region(const std::vector<double>& tau_grid,
                                   const std::vector<double>& q_grid) {
  if (tau_grid.empty() || q_grid.empty())
    throw std::invalid_argument("emit_region: grids must be nonempty");
  std::vector<RegionRow> rows;
  rows.reserve(tau_grid.size() * q_grid.size());
  for (double tau : tau_grid) {
    for (double q : q_grid) {
      auto [lo, hi] = consolidated_window(tau, q);
      rows.push_back({tau, q, lo, hi, lo < hi});
    }
  }
  return rows;
}

std::string region_csv(const std::vector<RegionRow>& rows) {
  std::ostringstream os;
  os << "tau,q,lower,upper,feasible\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d\n", r.tau, r.q, r.lower, r.upper,
                  r.nonempty ? 1 : 0);
    os << buf;
  }
  return os.str();
}

}  // namespace critreg
