#include "critreg/holder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace critreg {

HolderEstimate holder_norm(const std::vector<std::pair<double, double>>& samples, double tau) {
  if (samples.size() < 2) throw std::invalid_argument("holder_norm: need at least 2 samples");
  if (!(tau >= 0.0 && tau < 1.0 + 1e-15))
    throw std::invalid_argument("holder_norm: tau outside [0,1)");
  HolderEstimate est;
  est.tau = tau;
  for (size_t i = 0; i < samples.size(); ++i) {
    for (size_t j = i + 1; j < samples.size(); ++j) {
      const double dx = std::fabs(samples[i].first - samples[j].first);
      if (dx == 0.0) continue;
      const double q = std::fabs(samples[i].second - samples[j].second) / std::pow(dx, tau);
      if (q > est.value) {
        est.value = q;
        est.x = samples[i].first;
        est.y = samples[j].first;
      }
    }
  }
  return est;
}

HolderEstimate holder_norm_of(const std::function<double(double)>& fn, double lo, double hi,
                              double tau, int initial_grid, int max_grid) {
  double prev = -1.0;
  HolderEstimate est;
  for (int n = initial_grid; n <= max_grid; n *= 2) {
    std::vector<std::pair<double, double>> samples;
    samples.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
      double x = lo + (hi - lo) * i / n;
      samples.emplace_back(x, fn(x));
    }
    est = holder_norm(samples, tau);
    if (prev > 0.0 && est.value <= prev * 1.01) break;  // stabilized within 1%
    prev = est.value;
  }
  return est;
}

DisplacementReport check_displacement(const std::function<double(double)>& f,
                                      const std::function<double(double)>& df, double a, double b,
                                      double tau, int grid) {
  if (!(b > a)) throw std::invalid_argument("check_displacement: empty interval");
  if (std::fabs(f(a) - a) > 1e-12 * std::max(1.0, std::fabs(a)))
    throw std::invalid_argument("check_displacement: f does not fix a");
  DisplacementReport rep;
  rep.est_deriv_holder = holder_norm_of(df, a, b, tau).value;
  const double coef = 1.01 * rep.est_deriv_holder;
  rep.points = grid;
  for (int i = 1; i < grid; ++i) {
    const double x = a + (b - a) * i / grid;
    const double lhs = std::fabs(f(x) - x);
    const double rhs = coef * std::pow(x - a, 1.0 + tau);
    const double margin = rhs > 0 ? lhs / rhs : (lhs > 0 ? 1e300 : 0.0);
    rep.worst_margin = std::max(rep.worst_margin, margin);
    if (lhs > rhs + 1e-15) {
      rep.all_hold = false;
      ++rep.violations;
    }
  }
  return rep;
}

int min_k_for_tau(double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("min_k_for_tau: tau outside (0,1]");
  int k = 2;
  while (tau * std::pow(1.0 + tau, k - 2) < 1.0) {
    ++k;
    if (k > 1000000) throw std::runtime_error("min_k_for_tau: tau too small");
  }
  return k;
}

int k_tau_lower_bound(double tau) {
  if (!(tau > 0.0 && tau <= 1.0))
    throw std::invalid_argument("k_tau_lower_bound: tau outside (0,1]");
  return static_cast<int>(std::ceil(1.0 + 1.0 / tau - 1e-12));
}

Z2Report z2_sequence_diagnostic(const std::function<double(double)>& a_map,
                                const std::function<double(double)>& a_deriv,
                                const std::function<double(double)>& t_map,
                                const std::function<double(double)>& t_deriv, double y, double z,
                                double tau, int n_max,
                                const std::vector<std::pair<double, double>>& sample_regions) {
  if (std::fabs(t_map(y) - y) > 1e-12)
    throw std::invalid_argument("z2 diagnostic: t does not fix y");
  if (!(y < z && z < t_map(z)))
    throw std::invalid_argument("z2 diagnostic: need y < z < t(z)");

  Z2Report rep;
  for (const auto& [lo, hi] : sample_regions) {
    rep.est_dt_holder = std::max(rep.est_dt_holder, holder_norm_of(t_deriv, lo, hi, tau).value);
    rep.est_dloga_holder = std::max(
        rep.est_dloga_holder,
        holder_norm_of([&](double x) { return std::log(a_deriv(x)); }, lo, hi, tau).value);
  }

  double ay = y, az = z;
  std::vector<double> Ls, Ms;
  for (int i = 0; i <= n_max; ++i) {
    Z2Row row;
    row.i = i;
    row.L = az - ay;
    row.M = t_map(az) - az;
    row.ratio = row.L > 0 ? row.M / row.L : 0.0;
    row.disp_rhs = 1.01 * rep.est_dt_holder * std::pow(row.L, 1.0 + tau);
    rep.k_partial += std::pow(row.L, tau);
    row.partial_k = rep.k_partial;
    if (row.M > row.disp_rhs + 1e-15) rep.displacement_ok = false;
    rep.m_sum += std::pow(std::max(row.M, 0.0), tau);
    rep.m_sum_bound += std::pow(1.01 * rep.est_dt_holder, tau) * std::pow(row.L, tau * (1.0 + tau));
    rep.rows.push_back(row);
    Ls.push_back(row.L);
    Ms.push_back(row.M);
    ay = a_map(ay);
    az = a_map(az);
  }
  rep.m_sum_ok = rep.m_sum <= rep.m_sum_bound + 1e-15;

  // power-law summability heuristic: least-squares slope of log(L_i^tau) in
  // log(i) over the second half; summable when the slope is below -1.
  {
    const size_t start = Ls.size() / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (size_t i = std::max<size_t>(start, 1); i < Ls.size(); ++i) {
      if (Ls[i] <= 0) continue;
      const double lx = std::log(static_cast<double>(i));
      const double ly = tau * std::log(Ls[i]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++cnt;
    }
    if (cnt >= 2 && sxx * cnt - sx * sx != 0.0)
      rep.fitted_exponent = (sxy * cnt - sx * sy) / (sxx * cnt - sx * sx);
    rep.hypothesis_summable = rep.fitted_exponent < -1.0 - 0.05;
  }

  // ratio dichotomy: commutation forces M_n/L_n >= e^{-A} M_0/L_0 with
  // A = [D log a]_tau (K + [Dt]_tau^tau); a drop below flags the conflict.
  const double A =
      rep.est_dloga_holder * (rep.k_partial + std::pow(rep.est_dt_holder, tau));
  if (!Ls.empty() && Ls[0] > 0) {
    rep.ratio_lower_bound = std::exp(-A) * (Ms[0] / Ls[0]);
    for (size_t i = 0; i < Ls.size(); ++i) {
      if (Ls[i] > 0 && Ms[i] / Ls[i] < rep.ratio_lower_bound * (1.0 - 1e-9)) {
        rep.conflict_at = static_cast<int>(i);
        break;
      }
    }
  }
  return rep;
}

std::string z2_report_csv(const Z2Report& r) {
  std::ostringstream os;
  os << "i,L,M,ratio,disp_rhs,partial_k\n";
  char buf[256];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", row.i, row.L, row.M,
                  row.ratio, row.disp_rhs, row.partial_k);
    os << buf;
  }
  return os.str();
}

}  // namespace critreg
