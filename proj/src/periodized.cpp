#include "critreg/periodized.hpp"

namespace critreg {

PeriodizedPL::PeriodizedPL(PLHomeo period, Rat x0, PLHomeo patch)
    : period_(std::move(period)), x0_(std::move(x0)), patch_(std::move(patch)) {
  auto comps = period_.support_components();
  if (comps.size() != 1 || comps[0].lo != 0 || comps[0].hi != 1)
    throw std::invalid_argument("PeriodizedPL: period map must be fixed-point free on (0,1)");
  if (!(x0_ > 0 && x0_ < 1)) throw std::invalid_argument("PeriodizedPL: anchor outside (0,1)");
  if (period_(x0_) < x0_) period_ = period_.inverse();  // normalize to move right
  inv_ = period_.inverse();
  x1_ = period_(x0_);
  for (const auto& c : patch_.support_components()) {
    if (!(c.lo >= x0_ && c.hi <= x1_))
      throw std::invalid_argument("PeriodizedPL: patch support leaves the fundamental domain");
  }
}

Rat PeriodizedPL::operator()(const Rat& x) const {
  if (x <= 0 || x >= 1) {
    if (x == 0 || x == 1) return x;
    throw std::domain_error("PeriodizedPL evaluated outside [0,1]");
  }
  Rat y = x;
  long long m = 0;
  const long long cap = 100000;
  while (y < x0_) {
    y = period_(y);
    if (--m < -cap) throw std::runtime_error("PeriodizedPL: domain location overflow");
  }
  while (y >= x1_) {
    y = inv_(y);
    if (++m > cap) throw std::runtime_error("PeriodizedPL: domain location overflow");
  }
  Rat v = patch_(y);
  for (; m < 0; ++m) v = inv_(v);
  for (; m > 0; --m) v = period_(v);
  return v;
}

PeriodizedPL compose(const PeriodizedPL& f, const PeriodizedPL& g) {
  if (!(f.period_ == g.period_ && f.x0_ == g.x0_))
    throw std::invalid_argument("PeriodizedPL: compose needs a common period and anchor");
  return PeriodizedPL(f.period_, f.x0_, compose(f.patch_, g.patch_));
}

PeriodizedPL PeriodizedAction::lift(const std::string& name) const {
  auto it = patches.find(name);
  if (it == patches.end()) throw std::invalid_argument("unbound generator name '" + name + "'");
  return PeriodizedPL(period, x0, it->second);
}

std::optional<long long> as_period_power(const PLHomeo& period, const PLHomeo& c, int max_power) {
  if (c.is_identity()) return std::nullopt;
  PLHomeo pos = period, neg = period.inverse();
  PLHomeo acc_p, acc_n;
  for (int j = 1; j <= max_power; ++j) {
    acc_p = compose(pos, acc_p);
    acc_n = compose(neg, acc_n);
    if (acc_p == c) return j;
    if (acc_n == c) return -j;
  }
  return std::nullopt;
}

}  // namespace critreg
