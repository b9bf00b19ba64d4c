#include "critreg/lamp.hpp"

#include "critreg/holder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace critreg::lamp {

namespace {

// ----- quadrature -----------------------------------------------------------

struct GaussLegendre {
  std::array<double, 32> node{}, weight{};  // on [0,1]
  GaussLegendre() {
    const int n = 32;
    for (int i = 0; i < n; ++i) {
      // Newton on P_n over [-1,1], cosine initial guess
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-16) break;
      }
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      node[n - 1 - i] = 0.5 * (x + 1.0);
      weight[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);  // weight/2 on [0,1]
    }
  }
};

const GaussLegendre& gl() {
  static const GaussLegendre g;
  return g;
}

template <typename F>
double integrate01(const F& f, double upto) {
  double acc = 0.0;
  const auto& g = gl();
  for (int i = 0; i < 32; ++i) acc += g.weight[i] * f(g.node[i] * upto);
  return acc * upto;
}

template <typename F>
double simpson(const F& f, double a, double b, int n = 16) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// ∫_X^∞ f with f ~ c x^{-decay}, decay > 1: doubling panels plus a power tail.
template <typename F>
double tail_integral(const F& f, double X, double decay) {
  double acc = 0.0;
  for (int it = 0; it < 60; ++it) {
    acc += simpson(f, X, 2.0 * X);
    X *= 2.0;
    const double rest = f(X) * X / (decay - 1.0);
    if (rest <= 1e-10 * acc || it == 59) return acc + rest;
  }
  return acc;
}

// Σ_{k=from}^∞ f(k) with f ~ k^{-decay}: a stretch of direct terms plus the
// integral estimate (midpoint continuation).
template <typename F>
double tail_sum(const F& f, int from, double decay) {
  double acc = 0.0;
  const int direct = 48;
  for (int k = from; k < from + direct; ++k) acc += f(static_cast<double>(k));
  return acc + tail_integral(f, from + direct - 0.5, decay);
}

double ipow(double base, double e) { return std::pow(base, e); }

}  // namespace

// ----- Structure3 -----------------------------------------------------------

double raw_block_length(const Params& par, int i, int j, int k) {
  const double aj = std::abs(j), ak = std::abs(k);
  if (i != 0)
    return 1.0 / (ipow(std::abs(i) + 1.0, par.p) + ipow(aj, par.q) + ipow(ak, par.r));
  return 1.0 / (ipow(aj + 1.0, par.qprime) + ipow(ak, par.r));
}

double Structure3::raw_len(int i, int j, int k) const { return raw_block_length(par_, i, j, k); }

size_t Structure3::bidx(int i, int j, int k) const {
  const size_t w = 2 * N_ + 1;
  return (static_cast<size_t>(i + N_) * w + (j + N_)) * w + (k + N_);
}
size_t Structure3::cidx(int i, int j) const {
  return static_cast<size_t>(i + N_) * (2 * N_ + 1) + (j + N_);
}
size_t Structure3::lidx(int i) const { return static_cast<size_t>(i + N_); }

Structure3 Structure3::build(const Params& par, int N) {
  if (N < 2) throw std::invalid_argument("Structure3: N must be >= 2");
  const Residuals res = check_conditions(par);
  if (!(res.b > 0 && res.c > 0))
    throw std::invalid_argument("Structure3: non-summable parameters (conditions B/C fail)");

  Structure3 st;
  st.N_ = N;
  st.par_ = par;
  const int w = 2 * N + 1;
  st.len_.assign(static_cast<size_t>(w) * w * w, 0.0);
  st.blo_.assign(st.len_.size(), 0.0);
  st.cgap_.assign(static_cast<size_t>(w) * w, 0.0);
  st.clo_.assign(st.cgap_.size(), 0.0);
  st.lgap_.assign(w, 0.0);
  st.llo_.assign(w, 0.0);

  const double p = par.p, q = par.q, qp = par.qprime, r = par.r;
  auto base_ij = [&](int i, double j) {
    return i != 0 ? ipow(std::abs(i) + 1.0, p) + ipow(std::abs(j), q)
                  : ipow(std::abs(j) + 1.0, qp);
  };
  // Σ_{k∈Z} 1/(A + |k|^r), full column mass of the infinite structure
  auto colmass_inf = [&](double A) {
    auto f = [&](double x) { return 1.0 / (A + ipow(x, r)); };
    return 1.0 / A + 2.0 * tail_sum(f, 1, r);
  };

  // raw block lengths, one-sided column gaps, column masses
  std::vector<double> col_mass(st.cgap_.size(), 0.0);
  for (int i = -N; i <= N; ++i) {
    for (int j = -N; j <= N; ++j) {
      const double A = base_ij(i, j);
      double m = 0.0;
      for (int k = -N; k <= N; ++k) {
        const double L = st.raw_len(i, j, k);
        st.len_[st.bidx(i, j, k)] = L;
        m += L;
      }
      auto fk = [&](double x) { return 1.0 / (A + ipow(x, r)); };
      const double gk = tail_sum(fk, N + 1, r);
      st.cgap_[st.cidx(i, j)] = gk;
      col_mass[st.cidx(i, j)] = m + 2.0 * gk;
    }
  }

  // one-sided level gaps and level masses
  std::vector<double> lev_mass(st.lgap_.size(), 0.0);
  const double decay_j = (q * (1.0 - 1.0 / r));
  const double decay_j0 = (qp * (1.0 - 1.0 / r));
  for (int i = -N; i <= N; ++i) {
    double m = 0.0;
    for (int j = -N; j <= N; ++j) m += col_mass[st.cidx(i, j)];
    auto fj = [&](double y) { return colmass_inf(base_ij(i, y)); };
    const double gj = tail_sum(fj, N + 1, i != 0 ? decay_j : decay_j0);
    st.lgap_[st.lidx(i)] = gj;
    lev_mass[st.lidx(i)] = m + 2.0 * gj;
  }

  // global gap: whole-level masses of the infinite structure past |i| = N
  auto levmass_inf = [&](double y) {
    auto fj = [&](double jj) { return colmass_inf(ipow(y + 1.0, p) + ipow(jj, q)); };
    return colmass_inf(ipow(y + 1.0, p)) + 2.0 * tail_sum(fj, 1, decay_j);
  };
  const double decay_i = p * (1.0 - 1.0 / r - 1.0 / q);
  const double gi = tail_sum(levmass_inf, N + 1, decay_i);

  double total = 2.0 * gi;
  for (double m : lev_mass) total += m;
  st.total_raw_ = total;
  st.scale_ = 1.0 / total;
  st.glob_gap_ = gi * st.scale_;

  // positions
  double cum = st.glob_gap_;
  for (int i = -N; i <= N; ++i) {
    st.llo_[st.lidx(i)] = cum;
    cum += st.lgap_[st.lidx(i)] * st.scale_;
    for (int j = -N; j <= N; ++j) {
      st.clo_[st.cidx(i, j)] = cum;
      cum += st.cgap_[st.cidx(i, j)] * st.scale_;
      for (int k = -N; k <= N; ++k) {
        st.blo_[st.bidx(i, j, k)] = cum;
        st.len_[st.bidx(i, j, k)] *= st.scale_;
        cum += st.len_[st.bidx(i, j, k)];
      }
      cum += st.cgap_[st.cidx(i, j)] * st.scale_;
    }
    cum += st.lgap_[st.lidx(i)] * st.scale_;
  }
  if (std::fabs(cum + st.glob_gap_ - 1.0) > 1e-9)
    throw std::runtime_error("Structure3: tiling drift");
  return st;
}

Seg Structure3::block(int i, int j, int k) const {
  const double lo = blo_[bidx(i, j, k)];
  const double hi = (k < N_) ? blo_[bidx(i, j, k + 1)] : lo + len_[bidx(i, j, k)];
  return {lo, hi};
}

Seg Structure3::column(int i, int j) const {
  const double lo = clo_[cidx(i, j)];
  const double hi =
      (j < N_) ? clo_[cidx(i, j + 1)] : block(i, j, N_).hi + cgap_[cidx(i, j)] * scale_;
  return {lo, hi};
}

Seg Structure3::level(int i) const {
  const double lo = llo_[lidx(i)];
  const double hi = (i < N_) ? llo_[lidx(i + 1)] : column(i, N_).hi + lgap_[lidx(i)] * scale_;
  return {lo, hi};
}

double Structure3::col_gap(int i, int j) const { return cgap_[cidx(i, j)] * scale_; }
double Structure3::lev_gap(int i) const { return lgap_[lidx(i)] * scale_; }

// ----- Profile ---------------------------------------------------------------

namespace {
inline double smoothstep(double v) { return v * v * (3.0 - 2.0 * v); }
inline double bump6(double v) { return 6.0 * v * (1.0 - v); }
}  // namespace

double Profile::weight(double xi) const {
  return std::exp(ld0_ + (ld1_ - ld0_) * smoothstep(xi) + c_ * bump6(xi));
}

Profile::Profile(Seg src, Seg dst, double d0, double d1) : src_(src), dst_(dst) {
  if (!(src.len() > 0 && dst.len() > 0 && d0 > 0 && d1 > 0))
    throw std::invalid_argument("Profile: degenerate block data");
  ld0_ = std::log(d0);
  ld1_ = std::log(d1);
  const double target = dst.len() / src.len();
  auto G = [&](double c) {
    return integrate01([&](double v) { return std::exp(ld0_ + (ld1_ - ld0_) * smoothstep(v) + c * bump6(v)); },
                       1.0);
  };
  // bracket the normalization coefficient, then safeguarded Newton
  double lo = 0.0, hi = 0.0;
  double g0 = G(0.0);
  if (g0 < target) {
    hi = 1.0;
    while (G(hi) < target) hi *= 2.0;
  } else {
    lo = -1.0;
    while (G(lo) > target) lo *= 2.0;
  }
  double c = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double val = G(c);
    if (val > target)
      hi = c;
    else
      lo = c;
    const double dval = integrate01(
        [&](double v) { return bump6(v) * std::exp(ld0_ + (ld1_ - ld0_) * smoothstep(v) + c * bump6(v)); }, 1.0);
    double step = (val - target) / dval;
    double cn = c - step;
    if (!(cn > lo && cn < hi)) cn = 0.5 * (lo + hi);
    if (std::fabs(cn - c) < 1e-16 * (1.0 + std::fabs(c))) {
      c = cn;
      break;
    }
    c = cn;
  }
  c_ = c;
  norm_ = G(c);  // realized integral; phi normalizes against it exactly
}

double Profile::phi(double xi) const {
  if (xi <= 0) return 0.0;
  if (xi >= 1) return 1.0;
  return integrate01([&](double v) { return weight(v); }, xi) / norm_;
}

double Profile::operator()(double x) const {
  const double xi = (x - src_.lo) / src_.len();
  return dst_.lo + dst_.len() * phi(xi);
}

double Profile::deriv(double x) const {
  double xi = (x - src_.lo) / src_.len();
  xi = std::clamp(xi, 0.0, 1.0);
  return dst_.len() * weight(xi) / (norm_ * src_.len());
}

double Profile::inverse(double y) const {
  const double eta = std::clamp((y - dst_.lo) / dst_.len(), 0.0, 1.0);
  double lo = 0.0, hi = 1.0, xi = eta;
  for (int it = 0; it < 80; ++it) {
    const double val = phi(xi);
    if (val > eta)
      hi = xi;
    else
      lo = xi;
    const double dval = weight(xi) / norm_;
    double xn = xi - (val - eta) / dval;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::fabs(xn - xi) < 1e-16) {
      xi = xn;
      break;
    }
    xi = xn;
  }
  return src_.lo + src_.len() * xi;
}

// ----- BlockMap ---------------------------------------------------------------

void BlockMap::add_identity(double lo, double hi) {
  if (hi <= lo) return;
  Piece p;
  p.kind = Piece::Kind::Identity;
  p.lo = lo;
  p.hi = hi;
  p.img_lo = lo;
  p.img_hi = hi;
  pieces_.push_back(p);
}

void BlockMap::add_affine(double lo, double hi, double img_lo, double img_hi) {
  if (hi <= lo) return;
  Piece p;
  p.kind = Piece::Kind::Affine;
  p.lo = lo;
  p.hi = hi;
  p.img_lo = img_lo;
  p.img_hi = img_hi;
  p.slope = (img_hi - img_lo) / (hi - lo);
  pieces_.push_back(p);
}

void BlockMap::add_chart(Seg domain, Seg image, const Profile* src, const Profile* dst) {
  Piece p;
  p.kind = Piece::Kind::Chart;
  p.lo = domain.lo;
  p.hi = domain.hi;
  p.img_lo = image.lo;
  p.img_hi = image.hi;
  p.chart_src = src;
  p.chart_dst = dst;
  pieces_.push_back(p);
}

void BlockMap::finish() {
  if (pieces_.empty()) throw std::logic_error("BlockMap: empty");
  if (pieces_.front().lo != 0.0 || pieces_.back().hi != 1.0)
    throw std::logic_error("BlockMap: does not cover [0,1]");
  for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
    if (pieces_[i].hi != pieces_[i + 1].lo || pieces_[i].img_hi != pieces_[i + 1].img_lo)
      throw std::logic_error("BlockMap: pieces are not contiguous");
  }
}

size_t BlockMap::find_piece(double x) const {
  size_t lo = 0, hi = pieces_.size() - 1;
  while (lo < hi) {
    const size_t mid = (lo + hi + 1) / 2;
    if (pieces_[mid].lo <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

size_t BlockMap::find_piece_by_image(double y) const {
  size_t lo = 0, hi = pieces_.size() - 1;
  while (lo < hi) {
    const size_t mid = (lo + hi + 1) / 2;
    if (pieces_[mid].img_lo <= y)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

double BlockMap::operator()(double x) const {
  x = std::clamp(x, 0.0, 1.0);
  const Piece& p = pieces_[find_piece(x)];
  switch (p.kind) {
    case Piece::Kind::Identity:
      return x;
    case Piece::Kind::Affine:
      return p.img_lo + p.slope * (x - p.lo);
    case Piece::Kind::Chart: {
      const double xi = (x - p.lo) / (p.hi - p.lo);
      const double eta = p.chart_dst->inverse((*p.chart_src)(xi));
      return p.img_lo + (p.img_hi - p.img_lo) * eta;
    }
  }
  return x;
}

double BlockMap::deriv(double x) const {
  x = std::clamp(x, 0.0, 1.0);
  const Piece& p = pieces_[find_piece(x)];
  switch (p.kind) {
    case Piece::Kind::Identity:
      return 1.0;
    case Piece::Kind::Affine:
      return p.slope;
    case Piece::Kind::Chart: {
      const double xi = (x - p.lo) / (p.hi - p.lo);
      const double eta = p.chart_dst->inverse((*p.chart_src)(xi));
      return (p.img_hi - p.img_lo) / (p.hi - p.lo) * p.chart_src->deriv(xi) /
             p.chart_dst->deriv(eta);
    }
  }
  return 1.0;
}

double BlockMap::inverse(double y) const {
  y = std::clamp(y, 0.0, 1.0);
  const Piece& p = pieces_[find_piece_by_image(y)];
  switch (p.kind) {
    case Piece::Kind::Identity:
      return y;
    case Piece::Kind::Affine:
      return p.lo + (y - p.img_lo) / p.slope;
    case Piece::Kind::Chart: {
      const double eta = (y - p.img_lo) / (p.img_hi - p.img_lo);
      const double xi = p.chart_src->inverse((*p.chart_dst)(eta));
      return p.lo + (p.hi - p.lo) * xi;
    }
  }
  return y;
}

// ----- ConstructedAction -------------------------------------------------------

BlockDerivs ConstructedAction::prescribed_t(int i, int j, int k) const {
  return {st_.raw_len(i, j, k) / st_.raw_len(i, j, k - 1),
          st_.raw_len(i, j, k + 1) / st_.raw_len(i, j, k)};
}
BlockDerivs ConstructedAction::prescribed_a(int i, int j, int k) const {
  return {st_.raw_len(i + 1, j, k - 1) / st_.raw_len(i, j, k - 1),
          st_.raw_len(i + 1, j, k) / st_.raw_len(i, j, k)};
}
BlockDerivs ConstructedAction::prescribed_b(int j, int k) const {
  return {st_.raw_len(0, j + 1, k - 1) / st_.raw_len(0, j, k - 1),
          st_.raw_len(0, j + 1, k) / st_.raw_len(0, j, k)};
}

ConstructedAction ConstructedAction::build(const Params& par, int N) {
  ConstructedAction act(Structure3::build(par, N));
  const Structure3& st = act.st_;

  // Normalized block charts: psi_v'(0) = |I_v|/|I_{v-e3}|, psi_v'(1) = 1.
  const int w = 2 * N + 1;
  act.charts_.reserve(static_cast<size_t>(w) * w * w);
  for (int i = -N; i <= N; ++i)
    for (int j = -N; j <= N; ++j)
      for (int k = -N; k <= N; ++k)
        act.charts_.emplace_back(Seg{0.0, 1.0}, Seg{0.0, 1.0},
                                 st.raw_len(i, j, k) / st.raw_len(i, j, k - 1), 1.0);
  auto chart = [&](int i, int j, int k) -> const Profile* {
    return &act.charts_[(static_cast<size_t>(i + N) * w + (j + N)) * w + (k + N)];
  };

  // ---- t: k-shift within every column
  auto t = std::make_unique<BlockMap>();
  t->add_identity(0.0, st.global_gap_l().hi);
  for (int i = -N; i <= N; ++i) {
    const Seg lev = st.level(i);
    t->add_identity(lev.lo, lev.lo + st.lev_gap(i));
    for (int j = -N; j <= N; ++j) {
      const Seg col = st.column(i, j);
      const double gap = st.col_gap(i, j);
      const Seg b_first = st.block(i, j, -N);
      t->add_affine(col.lo, b_first.lo, col.lo, b_first.hi);
      for (int k = -N; k < N; ++k)
        t->add_chart(st.block(i, j, k), st.block(i, j, k + 1), chart(i, j, k),
                     chart(i, j, k + 1));
      const Seg b_last = st.block(i, j, N);
      t->add_affine(b_last.lo, b_last.hi, b_last.hi, b_last.hi + 0.5 * gap);
      t->add_affine(b_last.hi, col.hi, b_last.hi + 0.5 * gap, col.hi);
    }
    t->add_identity(st.column(i, N).hi, lev.hi);
  }
  t->add_identity(st.level(N).hi, 1.0);
  t->finish();
  act.t_ = std::move(t);

  // ---- a: i-shift
  auto a = std::make_unique<BlockMap>();
  a->add_affine(0.0, st.level(-N).lo, 0.0, st.level(-N).hi);
  for (int i = -N; i < N; ++i) {
    const Seg lev = st.level(i), lev2 = st.level(i + 1);
    a->add_affine(lev.lo, lev.lo + st.lev_gap(i), lev2.lo, lev2.lo + st.lev_gap(i + 1));
    for (int j = -N; j <= N; ++j) {
      const Seg col = st.column(i, j), col2 = st.column(i + 1, j);
      a->add_affine(col.lo, col.lo + st.col_gap(i, j), col2.lo, col2.lo + st.col_gap(i + 1, j));
      for (int k = -N; k <= N; ++k)
        a->add_chart(st.block(i, j, k), st.block(i + 1, j, k), chart(i, j, k),
                     chart(i + 1, j, k));
      a->add_affine(st.block(i, j, N).hi, col.hi, st.block(i + 1, j, N).hi, col2.hi);
    }
    a->add_affine(st.column(i, N).hi, lev.hi, st.column(i + 1, N).hi, lev2.hi);
  }
  {
    const Seg levN = st.level(N);
    a->add_affine(levN.lo, levN.hi, levN.hi, levN.hi + 0.5 * (1.0 - levN.hi));
    a->add_affine(levN.hi, 1.0, levN.hi + 0.5 * (1.0 - levN.hi), 1.0);
  }
  a->finish();
  act.a_ = std::move(a);

  // ---- b: j-shift inside level 0, identity elsewhere
  auto b = std::make_unique<BlockMap>();
  const Seg lev0 = st.level(0);
  b->add_identity(0.0, lev0.lo);
  b->add_affine(lev0.lo, st.column(0, -N).lo, lev0.lo, st.column(0, -N).hi);
  for (int j = -N; j < N; ++j) {
    const Seg col = st.column(0, j), col2 = st.column(0, j + 1);
    b->add_affine(col.lo, col.lo + st.col_gap(0, j), col2.lo, col2.lo + st.col_gap(0, j + 1));
    for (int k = -N; k <= N; ++k)
      b->add_chart(st.block(0, j, k), st.block(0, j + 1, k), chart(0, j, k), chart(0, j + 1, k));
    b->add_affine(st.block(0, j, N).hi, col.hi, st.block(0, j + 1, N).hi, col2.hi);
  }
  {
    const Seg colN = st.column(0, N);
    b->add_affine(colN.lo, colN.hi, colN.hi, colN.hi + 0.5 * (lev0.hi - colN.hi));
    b->add_affine(colN.hi, lev0.hi, colN.hi + 0.5 * (lev0.hi - colN.hi), lev0.hi);
  }
  b->add_identity(lev0.hi, 1.0);
  b->finish();
  act.b_ = std::move(b);
  return act;
}

std::string ConstructedAction::blocks_csv() const {
  std::ostringstream os;
  os << "i,j,k,lo,hi,length,dt_lo,dt_hi,da_lo,da_hi,db_lo,db_hi\n";
  const int N = st_.n();
  char buf[512];
  for (int i = -N; i <= N; ++i)
    for (int j = -N; j <= N; ++j)
      for (int k = -N; k <= N; ++k) {
        const Seg b = st_.block(i, j, k);
        const auto dt = prescribed_t(i, j, k);
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g", i, j, k, b.lo,
                      b.hi, b.len(), dt.d_lo, dt.d_hi);
        os << buf;
        if (i < N) {
          const auto da = prescribed_a(i, j, k);
          std::snprintf(buf, sizeof buf, ",%.17g,%.17g", da.d_lo, da.d_hi);
          os << buf;
        } else {
          os << ",,";
        }
        if (i == 0 && j < N) {
          const auto db = prescribed_b(j, k);
          std::snprintf(buf, sizeof buf, ",%.17g,%.17g", db.d_lo, db.d_hi);
          os << buf;
        } else {
          os << ",,";
        }
        os << "\n";
      }
  return os.str();
}

// ----- verification ------------------------------------------------------------

namespace {

double commutator_dev(const std::function<double(double)>& f,
                      const std::function<double(double)>& finv,
                      const std::function<double(double)>& g,
                      const std::function<double(double)>& ginv, double x) {
  return std::fabs(f(g(finv(ginv(x)))) - x);
}

}  // namespace

CommutationReport verify_commutations(const ConstructedAction& act, int sample_count) {
  const Structure3& st = act.structure();
  const int N = st.n();
  CommutationReport rep;

  auto A = [&](double x) { return act.a()(x); };
  auto Ai = [&](double x) { return act.a().inverse(x); };
  auto T = [&](double x) { return act.t()(x); };
  auto Ti = [&](double x) { return act.t().inverse(x); };
  auto B = [&](double x) { return act.b()(x); };
  auto Bi = [&](double x) { return act.b().inverse(x); };

  // interior blocks, a few points each, until the budget is spent
  const double fracs[] = {0.31, 0.57, 0.83};
  std::vector<double> pts_at, pts_bt;
  for (int i = -N + 1; i <= N - 1 && static_cast<int>(pts_at.size()) < sample_count; ++i)
    for (int j = -N + 1; j <= N - 1 && static_cast<int>(pts_at.size()) < sample_count; ++j)
      for (int k = -N + 1; k <= N - 1 && static_cast<int>(pts_at.size()) < sample_count; ++k) {
        const Seg b = st.block(i, j, k);
        pts_at.push_back(b.lo + fracs[(std::abs(i + j + k)) % 3] * b.len());
      }
  for (int j = -N + 1; j <= N - 1; ++j)
    for (int k = -N + 1; k <= N - 1 && static_cast<int>(pts_bt.size()) < sample_count; ++k) {
      const Seg b = st.block(0, j, k);
      for (double f : fracs)
        if (static_cast<int>(pts_bt.size()) < sample_count)
          pts_bt.push_back(b.lo + f * b.len());
    }

  for (double x : pts_at) rep.max_dev_at = std::max(rep.max_dev_at, commutator_dev(A, Ai, T, Ti, x));
  for (double x : pts_bt) rep.max_dev_bt = std::max(rep.max_dev_bt, commutator_dev(B, Bi, T, Ti, x));

  // lamp commutators [a^m b a^-m, b] for m = 1..3, sampled on level 0 and level m
  for (int m = 1; m <= 3 && m < N; ++m) {
    auto W = [&](double x) {
      for (int s = 0; s < m; ++s) x = Ai(x);
      x = B(x);
      for (int s = 0; s < m; ++s) x = A(x);
      return x;
    };
    auto Wi = [&](double x) {
      for (int s = 0; s < m; ++s) x = Ai(x);
      x = Bi(x);
      for (int s = 0; s < m; ++s) x = A(x);
      return x;
    };
    int budget = sample_count / 3;
    for (int j = -N + 2; j <= N - 2 && budget > 0; ++j)
      for (int k = -N + 1; k <= N - 1 && budget > 0; ++k)
        for (int lev : {0, m}) {
          const Seg blk = st.block(lev, j, k);
          const double x = blk.lo + fracs[(std::abs(j + k)) % 3] * blk.len();
          rep.max_dev_lamp = std::max(rep.max_dev_lamp, commutator_dev(W, Wi, B, Bi, x));
          --budget;
        }
  }
  rep.samples = static_cast<int>(pts_at.size() + pts_bt.size());
  return rep;
}

LogLipschitzReport check_log_deriv_lipschitz(const ConstructedAction& act, double m_estimate,
                                             int grid_per_block) {
  const Structure3& st = act.structure();
  const int N = st.n();
  LogLipschitzReport rep;
  auto scan = [&](const BlockMap& g, int i, int j, int k, double ratio_expr) {
    const Seg blk = st.block(i, j, k);
    double lip = 0.0;
    double prev_x = blk.lo + 1e-3 * blk.len();
    double prev_v = std::log(g.deriv(prev_x));
    for (int s = 1; s <= grid_per_block; ++s) {
      const double x = blk.lo + (1e-3 + (1.0 - 2e-3) * s / grid_per_block) * blk.len();
      const double v = std::log(g.deriv(x));
      lip = std::max(lip, std::fabs(v - prev_v) / (x - prev_x));
      prev_x = x;
      prev_v = v;
    }
    const double dev = std::fabs(ratio_expr - 1.0);
    ++rep.blocks;
    if (dev > 1e-12) {
      rep.worst_ratio = std::max(rep.worst_ratio, lip / (m_estimate / blk.len() * dev));
      rep.empirical_m = std::max(rep.empirical_m, lip * blk.len() / dev);
    }
  };
  auto rr = [&](double lu, double lv, double lu3, double lv3) { return (lu / lv) / (lu3 / lv3); };
  for (int i = -N + 1; i <= N - 1; ++i)
    for (int j = -N + 1; j <= N - 1; ++j)
      for (int k = -N + 1; k <= N - 1; ++k) {
        scan(act.t(), i, j, k,
             rr(st.raw_len(i, j, k), st.raw_len(i, j, k + 1), st.raw_len(i, j, k - 1),
                st.raw_len(i, j, k)));
        if (i < N - 1)
          scan(act.a(), i, j, k,
               rr(st.raw_len(i, j, k), st.raw_len(i + 1, j, k), st.raw_len(i, j, k - 1),
                  st.raw_len(i + 1, j, k - 1)));
        if (i == 0 && j < N - 1)
          scan(act.b(), 0, j, k,
               rr(st.raw_len(0, j, k), st.raw_len(0, j + 1, k), st.raw_len(0, j, k - 1),
                  st.raw_len(0, j + 1, k - 1)));
      }
  return rep;
}

NestedSupportReport nested_support_check(const Structure3& st, const BlockMap& a,
                                         const BlockMap& b, const BlockMap& t) {
  NestedSupportReport rep;
  const Seg lev0 = st.level(0);
  rep.supp_b = lev0;
  rep.j2 = {st.column(0, 0).lo, st.column(0, 0).hi};

  // supp a must be all of (0,1): no identity piece strictly inside
  for (const auto& p : a.pieces())
    if (p.kind == BlockMap::Piece::Kind::Identity && p.hi > 0.0 && p.lo < 1.0) rep.nested = false;
  // b: identity exactly outside level 0, non-identity pieces inside
  for (const auto& p : b.pieces()) {
    const bool outside = p.hi <= lev0.lo || p.lo >= lev0.hi;
    if (outside && p.kind != BlockMap::Piece::Kind::Identity) rep.nested = false;
    if (!outside && p.kind == BlockMap::Piece::Kind::Identity) rep.nested = false;
  }
  // a component of supp t with closure inside supp b
  if (!(lev0.lo < rep.j2.lo && rep.j2.hi < lev0.hi)) rep.nested = false;
  // t genuinely moves the column interior and fixes its endpoints
  const double mid = st.block(0, 0, 0).lo + 0.5 * st.block(0, 0, 0).len();
  if (std::fabs(t(rep.j2.lo) - rep.j2.lo) > 1e-15) rep.nested = false;
  if (std::fabs(t(mid) - mid) < 1e-15) rep.nested = false;
  return rep;
}

NestedSupportReport nested_support_check(const ConstructedAction& act) {
  return nested_support_check(act.structure(), act.a(), act.b(), act.t());
}

std::vector<std::vector<std::pair<double, double>>> valid_region_deriv_samples(
    const ConstructedAction& act, const BlockMap& g, int per_block) {
  const Structure3& st = act.structure();
  const int N = st.n();
  std::vector<std::vector<std::pair<double, double>>> out;
  for (int i = -N + 1; i <= N - 1; ++i)
    for (int j = -N + 1; j <= N - 1; ++j) {
      std::vector<std::pair<double, double>> col;
      for (int k = -N + 1; k <= N - 1; ++k) {
        // left junction value plus interior midpoints; the right junction of
        // the last valid block would sample the truncation-boundary piece
        const Seg b = st.block(i, j, k);
        col.emplace_back(b.lo, g.deriv(b.lo));
        for (int s = 0; s < per_block; ++s) {
          const double x = b.lo + b.len() * (s + 0.5) / per_block;
          col.emplace_back(x, g.deriv(x));
        }
      }
      out.push_back(std::move(col));
    }
  return out;
}

double sampled_deriv_holder(const ConstructedAction& act, const BlockMap& g, double tau,
                            int per_block) {
  double worst = 0.0;
  for (const auto& col : valid_region_deriv_samples(act, g, per_block)) {
    if (col.size() < 2) continue;
    worst = std::max(worst, holder_norm(col, tau).value);
  }
  return worst;
}

// ----- TwoLevelPair --------------------------------------------------------------

double TwoLevelPair::raw_len(int i, int k) const {
  return 1.0 / (ipow(std::abs(i) + 1.0, p_) + ipow(std::abs(k), r_));
}

size_t TwoLevelPair::bidx(int i, int k) const {
  return static_cast<size_t>(i + N_) * (2 * N_ + 1) + (k + N_);
}

Seg TwoLevelPair::block(int i, int k) const {
  const double lo = blo_[bidx(i, k)];
  const double hi = (k < N_) ? blo_[bidx(i, k + 1)] : lo + len_[bidx(i, k)];
  return {lo, hi};
}

Seg TwoLevelPair::column(int i) const {
  const double lo = clo_[static_cast<size_t>(i + N_)];
  const double hi = (i < N_) ? clo_[static_cast<size_t>(i + N_ + 1)]
                             : block(i, N_).hi + cgap_[static_cast<size_t>(i + N_)];
  return {lo, hi};
}

TwoLevelPair TwoLevelPair::build(double p, double r, int N) {
  if (!(p > 1 && r > 1 && N >= 2)) throw std::invalid_argument("TwoLevelPair: bad parameters");
  if (!(p * (1.0 - 1.0 / r) > 1.0))
    throw std::invalid_argument("TwoLevelPair: column masses are not summable");
  TwoLevelPair tl;
  tl.N_ = N;
  tl.p_ = p;
  tl.r_ = r;
  const int w = 2 * N + 1;
  tl.len_.assign(static_cast<size_t>(w) * w, 0.0);
  tl.blo_.assign(tl.len_.size(), 0.0);
  tl.cgap_.assign(w, 0.0);
  tl.clo_.assign(w, 0.0);

  auto colmass_inf = [&](double A) {
    auto f = [&](double x) { return 1.0 / (A + ipow(x, r)); };
    return 1.0 / A + 2.0 * tail_sum(f, 1, r);
  };
  std::vector<double> col_mass(w, 0.0);
  for (int i = -N; i <= N; ++i) {
    const double A = ipow(std::abs(i) + 1.0, p);
    double m = 0.0;
    for (int k = -N; k <= N; ++k) {
      tl.len_[tl.bidx(i, k)] = tl.raw_len(i, k);
      m += tl.len_[tl.bidx(i, k)];
    }
    auto fk = [&](double x) { return 1.0 / (A + ipow(x, r)); };
    tl.cgap_[static_cast<size_t>(i + N)] = tail_sum(fk, N + 1, r);
    col_mass[static_cast<size_t>(i + N)] = m + 2.0 * tl.cgap_[static_cast<size_t>(i + N)];
  }
  auto levmass = [&](double y) { return colmass_inf(ipow(y + 1.0, p)); };
  const double gi = tail_sum(levmass, N + 1, p * (1.0 - 1.0 / r));
  double total = 2.0 * gi;
  for (double m : col_mass) total += m;
  tl.scale_ = 1.0 / total;
  tl.glob_gap_ = gi * tl.scale_;

  double cum = tl.glob_gap_;
  for (int i = -N; i <= N; ++i) {
    tl.clo_[static_cast<size_t>(i + N)] = cum;
    tl.cgap_[static_cast<size_t>(i + N)] *= tl.scale_;
    cum += tl.cgap_[static_cast<size_t>(i + N)];
    for (int k = -N; k <= N; ++k) {
      tl.blo_[tl.bidx(i, k)] = cum;
      tl.len_[tl.bidx(i, k)] *= tl.scale_;
      cum += tl.len_[tl.bidx(i, k)];
    }
    cum += tl.cgap_[static_cast<size_t>(i + N)];
  }

  // normalized block charts, psi'(0) = len(i,k)/len(i,k-1), psi'(1) = 1
  tl.charts_.reserve(static_cast<size_t>(w) * w);
  for (int i = -N; i <= N; ++i)
    for (int k = -N; k <= N; ++k)
      tl.charts_.emplace_back(Seg{0.0, 1.0}, Seg{0.0, 1.0},
                              tl.raw_len(i, k) / tl.raw_len(i, k - 1), 1.0);
  auto chart = [&](int i, int k) -> const Profile* {
    return &tl.charts_[static_cast<size_t>(i + N) * w + (k + N)];
  };

  // t within columns
  auto t = std::make_unique<BlockMap>();
  t->add_identity(0.0, tl.glob_gap_);
  for (int i = -N; i <= N; ++i) {
    const Seg col = tl.column(i);
    const double gap = tl.cgap_[static_cast<size_t>(i + N)];
    const Seg b_first = tl.block(i, -N);
    t->add_affine(col.lo, b_first.lo, col.lo, b_first.hi);
    for (int k = -N; k < N; ++k)
      t->add_chart(tl.block(i, k), tl.block(i, k + 1), chart(i, k), chart(i, k + 1));
    const Seg b_last = tl.block(i, N);
    t->add_affine(b_last.lo, b_last.hi, b_last.hi, b_last.hi + 0.5 * gap);
    t->add_affine(b_last.hi, col.hi, b_last.hi + 0.5 * gap, col.hi);
  }
  t->add_identity(tl.column(N).hi, 1.0);
  t->finish();
  tl.t_ = std::move(t);

  // a across columns
  auto a = std::make_unique<BlockMap>();
  a->add_affine(0.0, tl.column(-N).lo, 0.0, tl.column(-N).hi);
  for (int i = -N; i < N; ++i) {
    const Seg col = tl.column(i), col2 = tl.column(i + 1);
    const double g1 = tl.cgap_[static_cast<size_t>(i + N)];
    const double g2 = tl.cgap_[static_cast<size_t>(i + N + 1)];
    a->add_affine(col.lo, col.lo + g1, col2.lo, col2.lo + g2);
    for (int k = -N; k <= N; ++k)
      a->add_chart(tl.block(i, k), tl.block(i + 1, k), chart(i, k), chart(i + 1, k));
    a->add_affine(tl.block(i, N).hi, col.hi, tl.block(i + 1, N).hi, col2.hi);
  }
  {
    const Seg colN = tl.column(N);
    a->add_affine(colN.lo, colN.hi, colN.hi, colN.hi + 0.5 * (1.0 - colN.hi));
    a->add_affine(colN.hi, 1.0, colN.hi + 0.5 * (1.0 - colN.hi), 1.0);
  }
  a->finish();
  tl.a_ = std::move(a);
  return tl;
}

}  // namespace critreg::lamp
