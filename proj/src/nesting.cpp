#include "critreg/nesting.hpp"

#include "critreg/holder.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace critreg {

Rat exact_eval(const ExactMap& m, const Rat& x) {
  return std::visit([&](const auto& f) { return f(x); }, m);
}

IntervalQ exact_image(const ExactMap& m, const IntervalQ& iv) {
  return IntervalQ{exact_eval(m, iv.lo), exact_eval(m, iv.hi), iv.lo_open, iv.hi_open};
}

NestingReport verify_nesting_witness(const NestingWitness& w, int n_max, double tail_tolerance) {
  NestingReport rep;
  const int k = static_cast<int>(w.intervals.size());

  if (k < 2 || w.maps.empty() || w.seq.empty() || !(w.u > 0 && w.u <= 1)) {
    rep.shape_ok = false;
    rep.fail_reason = "malformed witness: need k >= 2 intervals, maps, a sequence, u in (0,1]";
    return rep;
  }
  for (int i = 0; i + 1 < k; ++i) {
    const auto& a = w.intervals[i];
    const auto& b = w.intervals[i + 1];
    if (!(open_subset(b, a) && !(a.lo == b.lo && a.hi == b.hi))) {
      rep.shape_ok = false;
      rep.fail_reason = "intervals are not strictly properly nested";
      return rep;
    }
  }
  for (int i = 2; i <= k; ++i) {
    auto it = w.level_cert.find(i);
    if (it == w.level_cert.end() || it->second < 0 ||
        it->second >= static_cast<int>(w.maps.size())) {
      rep.shape_ok = false;
      rep.fail_reason = "missing or out-of-range certificate for level " + std::to_string(i);
      return rep;
    }
  }
  for (int s : w.seq) {
    if (s < 0 || s >= static_cast<int>(w.maps.size())) {
      rep.shape_ok = false;
      rep.fail_reason = "sequence index out of range";
      return rep;
    }
  }

  const double u = rat_to_double(w.u);
  std::vector<IntervalQ> J = w.intervals;  // w_n-images, starting at w_0 = id
  std::vector<double> lens;
  for (int n = 0; n <= n_max; ++n) {
    const double len1 = rat_to_double(J[0].length());
    lens.push_back(len1);
    rep.partial_sum += std::pow(len1, u);
    rep.rows.push_back({n, len1, rep.partial_sum});
    rep.steps_checked = n + 1;

    for (int i = 2; i <= k && rep.condition_ii_ok; ++i) {
      const ExactMap& s = w.maps[w.level_cert.at(i)];
      const IntervalQ im_i = exact_image(s, J[i - 1]);
      if (!open_disjoint(im_i, J[i - 1])) {
        rep.condition_ii_ok = false;
        rep.fail_step = n;
        rep.fail_level = i;
        rep.fail_reason = "s w_n J_i meets w_n J_i";
      }
      const IntervalQ im_prev = exact_image(s, J[i - 2]);
      if (rep.condition_ii_ok && !(im_prev.lo == J[i - 2].lo && im_prev.hi == J[i - 2].hi)) {
        rep.condition_ii_ok = false;
        rep.fail_step = n;
        rep.fail_level = i;
        rep.fail_reason = "s w_n J_{i-1} != w_n J_{i-1}";
      }
    }
    if (!rep.condition_ii_ok) break;

    if (n < n_max) {
      int idx;
      if (n < static_cast<int>(w.seq.size()))
        idx = w.seq[n];
      else if (w.repeat_seq)
        idx = w.seq[n % w.seq.size()];
      else
        break;
      const ExactMap& s = w.maps[idx];
      for (auto& iv : J) iv = exact_image(s, iv);
    }
  }

  // geometric-ratio tail heuristic over the last quarter of steps
  if (lens.size() >= 4) {
    size_t start = lens.size() - lens.size() / 4 - 1;
    double rho = 0.0;
    for (size_t i = start; i + 1 < lens.size(); ++i)
      if (lens[i] > 0) rho = std::max(rho, lens[i + 1] / lens[i]);
    rep.tail_ratio = rho;
    if (rho < 1.0) {
      const double t_last = std::pow(lens.back(), u);
      const double q = std::pow(rho, u);
      rep.tail_bound = t_last * q / (1.0 - q);
      rep.tail_certified = rep.tail_bound <= tail_tolerance;
    }
  }
  return rep;
}

std::string nesting_report_csv(const NestingReport& r) {
  std::ostringstream os;
  os << "n,len_j1,partial_sum\n";
  char buf[128];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", row.n, row.len_j1, row.partial_sum);
    os << buf;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

double locate_mean_value_derivative(const C1Map& t, double lo, double hi, double quot) {
  // grid search for the mean-value point: argmin |t'(x) - quot| over [lo,hi]
  const int grid = 512;
  double best_x = lo, best = 1e300;
  for (int i = 0; i <= grid; ++i) {
    double x = lo + (hi - lo) * i / grid;
    double d = std::fabs(t.df(x) - quot);
    if (d < best) {
      best = d;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace

KnestReport knest_contradiction_quantities(const NumericNestingWitness& w, double tau, int n_max) {
  KnestReport rep;
  const int k = static_cast<int>(w.intervals.size());
  if (k < 2) throw std::invalid_argument("knest quantities: need k >= 2 intervals");

  // N := 1 + max over S of ([s']_tau + [log s']_tau), grid estimates.
  double worst = 0.0;
  for (const auto& s : w.maps) {
    double est = 0.0, est_log = 0.0;
    for (const auto& [lo, hi] : w.sample_regions) {
      est = std::max(est, holder_norm_of([&](double x) { return s.df(x); }, lo, hi, tau).value);
      est_log = std::max(
          est_log, holder_norm_of([&](double x) { return std::log(s.df(x)); }, lo, hi, tau).value);
    }
    worst = std::max(worst, est + est_log);
  }
  rep.n_const = 1.0 + worst;

  const double pow_k = std::pow(2.0, k - 2);           // 2^{k-2}
  const double claim_exp = std::pow(1.0 + tau, k - 2);  // (1+tau)^{k-2}
  const double claim_coef = std::pow(rep.n_const, pow_k - 1.0);

  const double base_ratio = (w.intervals[k - 1].second - w.intervals[k - 1].first) /
                            (w.intervals[k - 2].second - w.intervals[k - 2].first);

  std::vector<std::pair<double, double>> J = w.intervals;
  double partial = 0.0;
  std::vector<KnestRow> rows;
  for (int n = 0; n <= n_max; ++n) {
    KnestRow row;
    row.n = n;
    row.len_j1 = J[0].second - J[0].first;
    partial += std::pow(row.len_j1, w.u);
    row.partial_sum = partial;
    row.claim_lhs = J[k - 2].second - J[k - 2].first;
    row.claim_rhs = claim_coef * std::pow(row.len_j1, claim_exp);
    rows.push_back(row);
    if (n < n_max) {
      int idx = n < static_cast<int>(w.seq.size()) ? w.seq[n]
                                                   : (w.repeat_seq ? w.seq[n % w.seq.size()] : 0);
      const C1Map& s = w.maps[idx];
      for (auto& iv : J) iv = {s.f(iv.first), s.f(iv.second)};
    }
  }
  rep.n_bar = std::pow(rep.n_const, pow_k) * partial;

  const double bound = 1.0 + std::exp(-rep.n_bar) * base_ratio;
  const C1Map& t = w.maps.at(w.level_cert.at(k));
  J = w.intervals;
  for (int n = 0; n <= n_max; ++n) {
    auto& row = rows[n];
    // mean-value quotient between inf J_k^n and inf J_{k-1}^n under t
    const double a_k = J[k - 1].first, a_km1 = J[k - 2].first;
    const double quot = (a_k == a_km1) ? t.df(a_k) : (t.f(a_k) - t.f(a_km1)) / (a_k - a_km1);
    const double x_n = locate_mean_value_derivative(t, J[k - 2].first, J[k - 2].second, quot);
    row.deriv_observed = t.df(x_n);
    row.deriv_bound = bound;
    row.claim_lhs = J[k - 2].second - J[k - 2].first;  // recomputed along the same orbit
    if (row.claim_lhs > row.claim_rhs * (1.0 + 1e-9)) rep.claim_ok = false;
    if (rep.contradiction_at < 0 && row.deriv_observed < bound - 1e-12) rep.contradiction_at = n;
    if (n < n_max) {
      int idx = n < static_cast<int>(w.seq.size()) ? w.seq[n]
                                                   : (w.repeat_seq ? w.seq[n % w.seq.size()] : 0);
      const C1Map& s = w.maps[idx];
      for (auto& iv : J) iv = {s.f(iv.first), s.f(iv.second)};
    }
  }
  rep.rows = std::move(rows);
  return rep;
}

std::string knest_report_csv(const KnestReport& r) {
  std::ostringstream os;
  os << "n,len_j1,partial_sum,claim_lhs,claim_rhs,deriv_bound,deriv_observed\n";
  char buf[256];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", row.n, row.len_j1,
                  row.partial_sum, row.claim_lhs, row.claim_rhs, row.deriv_bound,
                  row.deriv_observed);
    os << buf;
  }
  return os.str();
}

}  // namespace critreg
