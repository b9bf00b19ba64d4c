#include "critreg/centralizer.hpp"

#include <algorithm>

namespace critreg {

namespace {

std::optional<CentralizerCertificate> certificate_from(const std::optional<TwoChain>& tc,
                                                       const PLHomeo& c) {
  if (!tc) return std::nullopt;
  const IntervalQ uni = open_iv(tc->J1.lo, tc->J2.hi);
  for (const auto& comp : c.support_components())
    if (open_intersects(comp, uni)) return CentralizerCertificate{*tc, comp};
  return std::nullopt;
}

}  // namespace

std::optional<CentralizerCertificate> centralizer_obstruction(const PLHomeo& c,
                                                              const ActionSpec& action) {
  for (const auto& [name, g] : action.generators)
    if (!commutes(c, g))
      throw std::invalid_argument("centralizer_obstruction: c does not commute with '" + name +
                                  "'");
  return certificate_from(find_two_chain(action), c);
}

std::optional<CentralizerCertificate> centralizer_obstruction(const PLHomeo& c,
                                                              const PeriodizedAction& action) {
  if (!as_period_power(action.period, c))
    throw std::invalid_argument(
        "centralizer_obstruction: c is not a power of the action's period map");
  return certificate_from(find_two_chain(ActionSpec{action.patches, action.word_budget}), c);
}

namespace {

// Derived-series proxy: level 0 is the deduplicated ball of the word budget,
// level i+1 holds commutators of level-i elements. An under-approximation of
// G^{(i)}, which is all a search can use.
std::vector<PLHomeo> derived_level(const std::vector<PLHomeo>& prev, size_t cap) {
  std::vector<PLHomeo> out;
  std::map<std::string, bool> seen;
  for (size_t i = 0; i < prev.size() && out.size() < cap; ++i) {
    for (size_t j = 0; j < prev.size() && out.size() < cap; ++j) {
      if (i == j) continue;
      PLHomeo c = commutator(prev[i], prev[j]);
      if (c.is_identity()) continue;
      if (seen.emplace(pl_to_string(c), true).second) out.push_back(std::move(c));
    }
  }
  return out;
}

struct Climb {
  std::vector<PLHomeo> swaps;       // g_2, ..., g_k (patch-level maps)
  std::vector<IntervalQ> nested;    // J_1 ⊋ ... ⊋ J_k
};

// The interior procedure shared by both overloads; works on plain PL maps
// (patches in the periodized case).
std::optional<Climb> climb_levels(const GenSet& gens, int budget, int k) {
  if (k < 2) throw std::invalid_argument("extract_nesting_witness: k must be >= 2");
  constexpr size_t kLevelCap = 48;

  std::vector<std::vector<PLHomeo>> levels;
  {
    std::vector<PLHomeo> ball;
    for (const auto& e : enumerate_elements(gens, budget)) ball.push_back(e.second);
    levels.push_back(std::move(ball));
  }
  for (int i = 1; i <= k; ++i) {
    levels.push_back(derived_level(levels.back(), kLevelCap));
    if (levels.back().empty()) return std::nullopt;
  }

  // innermost pair from some g_k in the level-k pool
  for (const PLHomeo& gk : levels[k]) {
    auto comps = gk.support_components();
    if (comps.empty()) continue;
    const IntervalQ Jkm1 = comps.front();
    const Rat z = (Jkm1.lo + Jkm1.hi) / 2;
    const Rat gz = gk(z);
    const IntervalQ Jk = z < gz ? open_iv(z, gz) : open_iv(gz, z);
    if (!open_disjoint(image_interval(gk, Jk), Jk)) continue;

    Climb cl;
    cl.swaps.assign(1, gk);
    cl.nested = {Jk, Jkm1};  // built inside-out, reversed at the end
    bool ok = true;
    IntervalQ J = Jkm1;
    for (int i = k - 1; i >= 2 && ok; --i) {
      ok = false;
      for (const PLHomeo& g : levels[i]) {
        if (!open_disjoint(image_interval(g, J), J)) continue;
        for (const auto& C : g.support_components()) {
          if (open_subset(J, C)) {
            cl.swaps.push_back(g);
            cl.nested.push_back(C);
            J = C;
            ok = true;
            break;
          }
        }
        if (ok) break;
      }
    }
    if (!ok) continue;
    std::reverse(cl.swaps.begin(), cl.swaps.end());    // g_2, ..., g_k
    std::reverse(cl.nested.begin(), cl.nested.end());  // J_1, ..., J_k
    return cl;
  }
  return std::nullopt;
}

template <typename WrapSwap>
std::optional<NestingWitness> witness_from_climb(const std::optional<Climb>& cl, const PLHomeo& c,
                                                 WrapSwap&& wrap) {
  if (!cl) return std::nullopt;
  // first power of c moving J_1 off itself
  const IntervalQ& J1 = cl->nested.front();
  long long N = 1;
  IntervalQ img = image_interval(c, J1);
  while (!open_disjoint(img, J1)) {
    img = image_interval(c, img);
    if (++N > 10000) return std::nullopt;
  }
  NestingWitness w;
  w.maps.emplace_back(pl_power(c, N));
  for (const auto& g : cl->swaps) w.maps.emplace_back(wrap(g));
  w.intervals = cl->nested;
  w.u = Rat(1);
  w.seq = {0};
  w.repeat_seq = true;
  const int k = static_cast<int>(cl->nested.size());
  for (int i = 2; i <= k; ++i) w.level_cert[i] = i - 1;
  // the witness must pass its own checker's exact swap conditions
  auto rep = verify_nesting_witness(w, 16, 1e300);
  if (!rep.accepted()) return std::nullopt;
  return w;
}

void require_no_fixed_point_over(const PLHomeo& c, const Rat& lo, const Rat& hi) {
  for (const auto& comp : c.support_components())
    if (comp.lo <= lo && hi <= comp.hi) return;
  throw std::invalid_argument(
      "extract_nesting_witness: c has a fixed point in the action's support interval");
}

}  // namespace

std::optional<NestingWitness> extract_nesting_witness(const ActionSpec& action, int k,
                                                      const PLHomeo& c) {
  Rat lo(1), hi(0);
  for (const auto& [name, g] : action.generators) {
    for (const auto& comp : g.support_components()) {
      lo = std::min(lo, comp.lo);
      hi = std::max(hi, comp.hi);
    }
    if (!commutes(c, g))
      throw std::invalid_argument("extract_nesting_witness: c does not centralize the action");
  }
  if (lo >= hi) return std::nullopt;  // trivial action
  require_no_fixed_point_over(c, lo, hi);
  auto cl = climb_levels(action.generators, action.word_budget, k);
  return witness_from_climb(cl, c, [](const PLHomeo& g) { return ExactMap(g); });
}

std::optional<NestingWitness> extract_nesting_witness(const PeriodizedAction& action, int k,
                                                      const PLHomeo& c) {
  if (!as_period_power(action.period, c))
    throw std::invalid_argument(
        "extract_nesting_witness: c is not a power of the action's period map");
  // the equivariant action's support accumulates at 0 and 1
  require_no_fixed_point_over(c, action.x0, c(action.x0));
  auto cl = climb_levels(action.patches, action.word_budget, k);
  return witness_from_climb(cl, c, [&](const PLHomeo& g) {
    return ExactMap(PeriodizedPL(action.period, action.x0, g));
  });
}

// ---------------------------------------------------------------------------
// Hand-built models.

GenSet two_bump_crossed_gens() {
  // Strong displacements: g1 throws everything right of inf J2 past U0, g2
  // throws everything left of sup J1 below U0, so positive-word images of U0
  // are pairwise disjoint (the ping configuration).
  PLHomeo g1 = PLHomeo::from_breakpoints(
      {{Rat(0), Rat(0)}, {Rat(1, 4), Rat(17, 32)}, {Rat(3, 4), Rat(3, 4)}, {Rat(1), Rat(1)}});
  PLHomeo g2 = PLHomeo::from_breakpoints(
      {{Rat(0), Rat(0)}, {Rat(1, 4), Rat(1, 4)}, {Rat(3, 4), Rat(15, 32)}, {Rat(1), Rat(1)}});
  return GenSet{{"g1", g1}, {"g2", g2}};
}

IntervalQ two_bump_u0() { return open_iv(Rat(15, 32), Rat(17, 32)); }

PeriodizedAction wreath_model() {
  // period A^{-1} moves right; fundamental domain [1/4, 1/2)
  PLHomeo period = thompson_a().inverse();
  // nested bumps: supp h1 = (20/64, 28/64), supp h2 = (168/512, 176/512)
  // inside an h1-fundamental gap, supp h3 = (1352/4096, 1360/4096) inside an
  // h2-fundamental gap
  PLHomeo h1 = PLHomeo::from_breakpoints({{Rat(0), Rat(0)},
                                          {Rat(20, 64), Rat(20, 64)},
                                          {Rat(22, 64), Rat(26, 64)},
                                          {Rat(28, 64), Rat(28, 64)},
                                          {Rat(1), Rat(1)}});
  PLHomeo h2 = PLHomeo::from_breakpoints({{Rat(0), Rat(0)},
                                          {Rat(168, 512), Rat(168, 512)},
                                          {Rat(170, 512), Rat(173, 512)},
                                          {Rat(176, 512), Rat(176, 512)},
                                          {Rat(1), Rat(1)}});
  PLHomeo h3 = PLHomeo::from_breakpoints({{Rat(0), Rat(0)},
                                          {Rat(1352, 4096), Rat(1352, 4096)},
                                          {Rat(1354, 4096), Rat(1357, 4096)},
                                          {Rat(1360, 4096), Rat(1360, 4096)},
                                          {Rat(1), Rat(1)}});
  return PeriodizedAction{period, Rat(1, 4), GenSet{{"h1", h1}, {"h2", h2}, {"h3", h3}}, 2};
}

PeriodizedAction crossed_center_model() {
  PLHomeo period = thompson_a().inverse();
  GenSet crossed = two_bump_crossed_gens();
  GenSet patches;
  for (const auto& [name, g] : crossed)
    patches.emplace(name, squeeze_into(g, Rat(5, 16), Rat(7, 16)));
  return PeriodizedAction{period, Rat(1, 4), patches, 2};
}

NestingWitness nesting_example_witness() {
  PLHomeo c = thompson_a().inverse();
  PLHomeo patch = PLHomeo::from_breakpoints({{Rat(0), Rat(0)},
                                             {Rat(10, 32), Rat(10, 32)},
                                             {Rat(11, 32), Rat(13, 32)},
                                             {Rat(14, 32), Rat(14, 32)},
                                             {Rat(1), Rat(1)}});
  NestingWitness w;
  w.maps.emplace_back(c);
  w.maps.emplace_back(PeriodizedPL(c, Rat(1, 4), patch));
  w.intervals = {open_iv(Rat(5, 16), Rat(7, 16)), open_iv(Rat(11, 32), Rat(12, 32))};
  w.u = Rat(1);
  w.seq = {0};
  w.repeat_seq = true;
  w.level_cert[2] = 1;
  return w;
}

}  // namespace critreg
