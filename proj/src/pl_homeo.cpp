#include "critreg/pl_homeo.hpp"

#include <algorithm>
#include <sstream>

namespace critreg {

namespace {

bool collinear(const PLHomeo::Point& a, const PLHomeo::Point& b, const PLHomeo::Point& c) {
  return (b.second - a.second) * (c.first - b.first) == (c.second - b.second) * (b.first - a.first);
}

std::vector<PLHomeo::Point> prune(std::vector<PLHomeo::Point> pts) {
  std::vector<PLHomeo::Point> out;
  out.reserve(pts.size());
  for (auto& p : pts) {
    while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), p)) out.pop_back();
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

PLHomeo::PLHomeo() : bp_{{Rat(0), Rat(0)}, {Rat(1), Rat(1)}} {}

PLHomeo PLHomeo::from_breakpoints(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.first < b.first; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2 || pts.front() != Point{Rat(0), Rat(0)} || pts.back() != Point{Rat(1), Rat(1)})
    throw std::invalid_argument("PLHomeo: breakpoints must start at (0,0) and end at (1,1)");
  for (size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i - 1].first < pts[i].first) || !(pts[i - 1].second < pts[i].second))
      throw std::invalid_argument("PLHomeo: breakpoints must be strictly increasing in x and y");
  }
  PLHomeo f;
  f.bp_ = prune(std::move(pts));
  return f;
}

Rat PLHomeo::operator()(const Rat& x) const {
  if (x < 0 || x > 1) throw std::domain_error("PLHomeo evaluated outside [0,1]");
  // last breakpoint with bp.first <= x
  size_t lo = 0, hi = bp_.size() - 1;
  while (lo + 1 < hi) {
    size_t mid = (lo + hi) / 2;
    if (bp_[mid].first <= x)
      lo = mid;
    else
      hi = mid;
  }
  if (x == bp_[hi].first) return bp_[hi].second;
  const auto& p = bp_[lo];
  const auto& q = bp_[hi];
  return p.second + (q.second - p.second) * (x - p.first) / (q.first - p.first);
}

Rat PLHomeo::slope_right(const Rat& x) const {
  if (x < 0 || x >= 1) {
    if (x == 1) return Rat(1);
    throw std::domain_error("slope_right outside [0,1)");
  }
  size_t lo = 0, hi = bp_.size() - 1;
  while (lo + 1 < hi) {
    size_t mid = (lo + hi) / 2;
    if (bp_[mid].first <= x)
      lo = mid;
    else
      hi = mid;
  }
  return (bp_[hi].second - bp_[lo].second) / (bp_[hi].first - bp_[lo].first);
}

bool PLHomeo::is_identity() const {
  return bp_.size() == 2;  // canonical form: identity prunes to {(0,0),(1,1)}
}

PLHomeo PLHomeo::inverse() const {
  std::vector<Point> pts;
  pts.reserve(bp_.size());
  for (const auto& p : bp_) pts.emplace_back(p.second, p.first);
  PLHomeo g;
  g.bp_ = std::move(pts);  // already sorted, canonical (collinearity is symmetric)
  return g;
}

PLHomeo compose(const PLHomeo& f, const PLHomeo& g) {
  const PLHomeo ginv = g.inverse();
  std::vector<Rat> xs;
  xs.reserve(g.breakpoints().size() + f.breakpoints().size());
  for (const auto& p : g.breakpoints()) xs.push_back(p.first);
  for (const auto& p : f.breakpoints()) xs.push_back(ginv(p.first));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<PLHomeo::Point> pts;
  pts.reserve(xs.size());
  for (const auto& x : xs) pts.emplace_back(x, f(g(x)));
  return PLHomeo::from_breakpoints(std::move(pts));
}

PLHomeo pl_power(const PLHomeo& f, long long n) {
  PLHomeo base = n < 0 ? f.inverse() : f;
  unsigned long long k = n < 0 ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
  PLHomeo acc;
  while (k) {
    if (k & 1) acc = compose(acc, base);
    k >>= 1;
    if (k) base = compose(base, base);
  }
  return acc;
}

IntervalQ image_interval(const PLHomeo& f, const IntervalQ& iv) {
  return IntervalQ{f(iv.lo), f(iv.hi), iv.lo_open, iv.hi_open};
}

bool commutes(const PLHomeo& f, const PLHomeo& g) { return compose(f, g) == compose(g, f); }

std::vector<IntervalQ> PLHomeo::support_components() const {
  // Exact fixed set: per segment, either the whole segment (slope 1 on the
  // diagonal) or at most one isolated root of f(x)=x.
  struct Piece {
    Rat lo, hi;
  };  // closed fixed pieces, points have lo==hi
  std::vector<Piece> fixed;
  fixed.push_back({Rat(0), Rat(0)});
  for (size_t i = 0; i + 1 < bp_.size(); ++i) {
    const auto& p = bp_[i];
    const auto& q = bp_[i + 1];
    const Rat sx = q.first - p.first;
    const Rat sy = q.second - p.second;
    if (sy == sx && p.second == p.first) {
      fixed.push_back({p.first, q.first});
      continue;
    }
    // f(x) - x = p.y + (sy/sx)(x - p.x) - x ; root where (sx-sy) x = p.y sx - sy p.x
    if (sy != sx) {
      Rat root = (p.second * sx - sy * p.first) / (sx - sy);
      if (root >= p.first && root <= q.first) fixed.push_back({root, root});
    }
  }
  fixed.push_back({Rat(1), Rat(1)});
  std::sort(fixed.begin(), fixed.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  // merge touching pieces
  std::vector<Piece> merged;
  for (const auto& pc : fixed) {
    if (!merged.empty() && pc.lo <= merged.back().hi) {
      if (pc.hi > merged.back().hi) merged.back().hi = pc.hi;
    } else {
      merged.push_back(pc);
    }
  }
  std::vector<IntervalQ> out;
  for (size_t i = 0; i + 1 < merged.size(); ++i) {
    if (merged[i].hi < merged[i + 1].lo) out.push_back(open_iv(merged[i].hi, merged[i + 1].lo));
  }
  return out;
}

PLHomeo PLHomeo::restrict_to(const IntervalQ& J) const {
  if (!(J.lo < J.hi) || J.lo < 0 || J.hi > 1)
    throw std::invalid_argument("restrict_to: bad interval");
  if ((*this)(J.lo) != J.lo || (*this)(J.hi) != J.hi)
    throw std::invalid_argument("restrict_to: interval is not invariant under the map");
  std::vector<Point> pts;
  pts.emplace_back(Rat(0), Rat(0));
  if (J.lo > 0) pts.emplace_back(J.lo, J.lo);
  for (const auto& p : bp_)
    if (p.first > J.lo && p.first < J.hi) pts.push_back(p);
  if (J.hi < 1) pts.emplace_back(J.hi, J.hi);
  pts.emplace_back(Rat(1), Rat(1));
  return from_breakpoints(std::move(pts));
}

bool supports_intersect(const PLHomeo& f, const PLHomeo& g) {
  const auto a = f.support_components();
  const auto b = g.support_components();
  for (const auto& x : a)
    for (const auto& y : b)
      if (open_intersects(x, y)) return true;
  return false;
}

PLHomeo thompson_a() {
  return PLHomeo::from_breakpoints({{Rat(0), Rat(0)},
                                    {Rat(1, 2), Rat(1, 4)},
                                    {Rat(3, 4), Rat(1, 2)},
                                    {Rat(1), Rat(1)}});
}

PLHomeo thompson_b() {
  return PLHomeo::from_breakpoints({{Rat(0), Rat(0)},
                                    {Rat(1, 2), Rat(1, 2)},
                                    {Rat(3, 4), Rat(5, 8)},
                                    {Rat(7, 8), Rat(3, 4)},
                                    {Rat(1), Rat(1)}});
}

bool is_dyadic_f_element(const PLHomeo& f) {
  const auto& bp = f.breakpoints();
  for (const auto& p : bp) {
    if (!is_dyadic(p.first) || !is_dyadic(p.second)) return false;
  }
  for (size_t i = 0; i + 1 < bp.size(); ++i) {
    Rat slope = (bp[i + 1].second - bp[i].second) / (bp[i + 1].first - bp[i].first);
    if (!is_power_of_two(slope)) return false;
  }
  return true;
}

PLHomeo squeeze_into(const PLHomeo& f, const Rat& lo, const Rat& hi) {
  if (!(Rat(0) <= lo && lo < hi && hi <= Rat(1)))
    throw std::invalid_argument("squeeze_into: bad target interval");
  const Rat w = hi - lo;
  std::vector<PLHomeo::Point> pts;
  pts.emplace_back(Rat(0), Rat(0));
  if (lo > 0) pts.emplace_back(lo, lo);
  for (const auto& p : f.breakpoints()) {
    Rat x = lo + w * p.first;
    Rat y = lo + w * p.second;
    if (x > lo && x < hi) pts.emplace_back(std::move(x), std::move(y));
  }
  if (hi < 1) pts.emplace_back(hi, hi);
  pts.emplace_back(Rat(1), Rat(1));
  return PLHomeo::from_breakpoints(std::move(pts));
}

std::string pl_to_string(const PLHomeo& f) {
  std::ostringstream os;
  bool first = true;
  for (const auto& p : f.breakpoints()) {
    if (!first) os << " ";
    os << rat_to_string(p.first) << "," << rat_to_string(p.second);
    first = false;
  }
  return os.str();
}

std::string interval_to_string(const IntervalQ& iv) {
  std::ostringstream os;
  os << (iv.lo_open ? "(" : "[") << rat_to_string(iv.lo) << ", " << rat_to_string(iv.hi)
     << (iv.hi_open ? ")" : "]");
  return os.str();
}

}  // namespace critreg
