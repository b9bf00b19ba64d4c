#include "critreg/dynamics.hpp"

#include <algorithm>
#include <map>

namespace critreg {

namespace {

struct TaggedInterval {
  IntervalQ iv;
  size_t elem;  // index into the enumeration
};

// Distinct support components over the ball, each tagged with the first
// (length-lex smallest) element realizing it.
std::vector<TaggedInterval> component_table(
    const std::vector<std::pair<GroupWord, PLHomeo>>& elems) {
  std::vector<TaggedInterval> out;
  std::map<std::pair<Rat, Rat>, size_t> seen;
  for (size_t e = 0; e < elems.size(); ++e) {
    for (const auto& c : elems[e].second.support_components()) {
      if (seen.emplace(std::make_pair(c.lo, c.hi), out.size()).second)
        out.push_back({c, e});
    }
  }
  return out;
}

}  // namespace

std::optional<TwoChain> find_two_chain(const ActionSpec& action) {
  auto elems = enumerate_elements(action.generators, action.word_budget);
  auto comps = component_table(elems);
  std::optional<TwoChain> best;
  long long best_len = 0;
  for (size_t i = 0; i < comps.size(); ++i) {
    for (size_t j = i + 1; j < comps.size(); ++j) {
      if (!proper_overlap(comps[i].iv, comps[j].iv)) continue;
      const auto& le = comps[i].iv.lo < comps[j].iv.lo ? comps[i] : comps[j];
      const auto& ri = comps[i].iv.lo < comps[j].iv.lo ? comps[j] : comps[i];
      long long len = elems[le.elem].first.length() + elems[ri.elem].first.length();
      if (!best || len < best_len) {
        best = TwoChain{le.iv, ri.iv, elems[le.elem].first, elems[ri.elem].first};
        best_len = len;
      }
    }
  }
  return best;
}

bool validate_two_chain(const TwoChain& tc, const GenSet& gens) {
  if (!(tc.J1.lo < tc.J2.lo && tc.J2.lo < tc.J1.hi && tc.J1.hi < tc.J2.hi)) return false;
  auto has_component = [&](const GroupWord& w, const IntervalQ& J) {
    for (const auto& c : word_map(w, gens).support_components())
      if (c.lo == J.lo && c.hi == J.hi) return true;
    return false;
  };
  return has_component(tc.g1, tc.J1) && has_component(tc.g2, tc.J2);
}

namespace {

std::optional<CrossedPairWitness> find_boundary_moved(
    const std::vector<std::pair<GroupWord, PLHomeo>>& elems) {
  // Precompute every element's value at every distinct component endpoint;
  // the pair scan then only compares rationals.
  std::vector<std::vector<IntervalQ>> comps(elems.size());
  std::map<Rat, size_t> ep_col;
  for (size_t e = 0; e < elems.size(); ++e) {
    comps[e] = elems[e].second.support_components();
    for (const auto& J : comps[e]) {
      ep_col.emplace(J.lo, ep_col.size());
      ep_col.emplace(J.hi, ep_col.size());
    }
  }
  std::vector<Rat> eps(ep_col.size());
  for (const auto& [x, col] : ep_col) eps[col] = x;
  std::vector<std::vector<Rat>> val(elems.size(), std::vector<Rat>(eps.size()));
  for (size_t e = 0; e < elems.size(); ++e)
    for (size_t c = 0; c < eps.size(); ++c) val[e][c] = elems[e].second(eps[c]);

  std::optional<CrossedPairWitness> best;
  long long best_len = 0;
  for (size_t fi = 0; fi < elems.size(); ++fi) {
    for (size_t gi = 0; gi < elems.size(); ++gi) {
      if (gi == fi) continue;
      long long len = elems[fi].first.length() + elems[gi].first.length();
      if (best && len >= best_len) continue;
      for (const auto& J : comps[fi]) {
        if (J.interior_contains(val[gi][ep_col.at(J.lo)]) ||
            J.interior_contains(val[gi][ep_col.at(J.hi)])) {
          best = CrossedPairWitness{elems[fi].first, elems[gi].first, BoundaryMovedData{J}};
          best_len = len;
          break;
        }
      }
    }
  }
  return best;
}

// Builds the ping inequalities from a two-chain: a = inf J2, b = sup J1,
// f = a power of the right element pulling b down toward a, g = a power of
// the left element pushing a up toward b. The exponents are the smallest
// making f(b) < g(a); they are not bounded by the word budget.
std::optional<CrossedPairWitness> ping_from_two_chain(const TwoChain& tc, const GenSet& gens) {
  const Rat a = tc.J2.lo;
  const Rat b = tc.J1.hi;
  const PLHomeo m1 = word_map(tc.g1, gens);
  const PLHomeo m2 = word_map(tc.g2, gens);
  // f moves left on J2 (so it pulls b = sup J1 ∈ J2 toward a = inf J2)
  const bool f_inv = !(m2(b) < b);
  const PLHomeo fmap = f_inv ? m2.inverse() : m2;
  const GroupWord fword = f_inv ? tc.g2.inverse() : tc.g2;
  // g moves right on J1
  const bool g_inv = !(m1(a) > a);
  const PLHomeo gmap = g_inv ? m1.inverse() : m1;
  const GroupWord gword = g_inv ? tc.g1.inverse() : tc.g1;

  Rat fb = b, ga = a;
  for (long long n = 1; n <= 100000; ++n) {
    fb = fmap(fb);
    ga = gmap(ga);
    if (fb < ga) {
      return CrossedPairWitness{fword.pow(n), gword.pow(n), PingData{a, b}};
    }
  }
  return std::nullopt;  // unreachable for exact PL data; guards pathological inputs
}

}  // namespace

std::optional<CrossedPairWitness> find_crossed_pair(const ActionSpec& action,
                                                    CrossedVariant variant) {
  if (variant == CrossedVariant::Ping) {
    auto tc = find_two_chain(action);
    if (!tc) return std::nullopt;
    return ping_from_two_chain(*tc, action.generators);
  }
  auto elems = enumerate_elements(action.generators, action.word_budget);
  auto bm = find_boundary_moved(elems);
  if (bm || variant == CrossedVariant::BoundaryMoved) return bm;
  auto tc = find_two_chain(action);
  if (!tc) return std::nullopt;
  return ping_from_two_chain(*tc, action.generators);
}

bool validate_crossed_pair(const CrossedPairWitness& w, const GenSet& gens) {
  const PLHomeo f = word_map(w.f, gens);
  const PLHomeo g = word_map(w.g, gens);
  if (const auto* bm = std::get_if<BoundaryMovedData>(&w.data)) {
    bool is_comp = false;
    for (const auto& c : f.support_components())
      if (c.lo == bm->J.lo && c.hi == bm->J.hi) is_comp = true;
    if (!is_comp) return false;
    return bm->J.interior_contains(g(bm->J.lo)) || bm->J.interior_contains(g(bm->J.hi));
  }
  const auto& p = std::get<PingData>(w.data);
  if (!(p.a < p.b)) return false;
  const Rat fb = f(p.b), ga = g(p.a);
  return f(p.a) == p.a && p.a < fb && fb < ga && ga < p.b && g(p.b) == p.b;
}

ConradianVerdict conradian_diagnostic(const ActionSpec& action) {
  return ConradianVerdict{find_two_chain(action), action.word_budget};
}

bool is_overlapping_pair(const PLHomeo& f, const PLHomeo& g) { return supports_intersect(f, g); }

bool check_nested_or_disjoint(const PLHomeo& f, const PLHomeo& g) {
  for (const auto& J : f.support_components())
    for (const auto& K : g.support_components())
      if (!nested_or_disjoint(J, K)) return false;
  return true;
}

namespace {

// Open-union merge: components merge only on genuine overlap; a shared
// endpoint stays a gap unless some third interval covers it.
std::vector<IntervalQ> merge_open(std::vector<IntervalQ> ivs) {
  std::sort(ivs.begin(), ivs.end(),
            [](const IntervalQ& a, const IntervalQ& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  std::vector<IntervalQ> out;
  for (const auto& iv : ivs) {
    if (!out.empty() && iv.lo < out.back().hi) {
      if (iv.hi > out.back().hi) out.back().hi = iv.hi;
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

}  // namespace

SupportClassification classify_supports(const ActionSpec& action) {
  auto elems = enumerate_elements(action.generators, action.word_budget);

  std::vector<IntervalQ> all;
  for (const auto& [w, m] : elems)
    for (const auto& c : m.support_components()) all.push_back(c);
  auto orbit_components = merge_open(std::move(all));

  // Two-chain unions among generator components (powers share the same
  // components, so generators suffice).
  std::vector<IntervalQ> gen_comps;
  for (const auto& [name, g] : action.generators)
    for (const auto& c : g.support_components()) gen_comps.push_back(c);
  std::vector<IntervalQ> chain_unions;
  for (size_t i = 0; i < gen_comps.size(); ++i)
    for (size_t j = i + 1; j < gen_comps.size(); ++j)
      if (proper_overlap(gen_comps[i], gen_comps[j]))
        chain_unions.push_back(open_iv(std::min(gen_comps[i].lo, gen_comps[j].lo),
                                       std::max(gen_comps[i].hi, gen_comps[j].hi)));
  chain_unions = merge_open(std::move(chain_unions));

  SupportClassification out;
  for (const auto& C : orbit_components) {
    const std::pair<GroupWord, PLHomeo>* realizer = nullptr;
    for (const auto& e : elems) {
      auto cs = e.second.support_components();
      if (cs.size() == 1 && cs[0].lo == C.lo && cs[0].hi == C.hi) {
        realizer = &e;
        break;
      }
    }
    if (realizer) {
      out.nested.emplace_back(C, realizer->first);
    } else {
      bool covered = false;
      for (const auto& U : chain_unions)
        if (open_subset(C, U)) covered = true;
      out.crossed_candidates.push_back(C);
      out.candidate_covered.push_back(covered);
      out.all_candidates_covered = out.all_candidates_covered && covered;
    }
  }
  return out;
}

bool f_disjoint_commutators_check(int budget) {
  const Rat half(1, 2);
  GenSet lower{{"a", squeeze_into(thompson_a(), Rat(0), half)},
               {"b", squeeze_into(thompson_b(), Rat(0), half)}};
  GenSet upper{{"a", squeeze_into(thompson_a(), half, Rat(1))},
               {"b", squeeze_into(thompson_b(), half, Rat(1))}};

  auto commutator_supports = [&](const GenSet& gens) {
    auto elems = enumerate_elements(gens, budget);
    std::vector<IntervalQ> comps;
    for (size_t i = 0; i < elems.size(); ++i)
      for (size_t j = i + 1; j < elems.size(); ++j) {
        PLHomeo c = commutator(elems[i].second, elems[j].second);
        for (const auto& iv : c.support_components()) comps.push_back(iv);
      }
    return comps;
  };

  const auto lo_comps = commutator_supports(lower);
  const auto hi_comps = commutator_supports(upper);
  for (const auto& iv : lo_comps)
    if (!(iv.lo >= 0 && iv.hi <= half)) return false;
  for (const auto& iv : hi_comps)
    if (!(iv.lo >= half && iv.hi <= 1)) return false;
  for (const auto& a : lo_comps)
    for (const auto& b : hi_comps)
      if (open_intersects(a, b)) return false;
  return true;
}

}  // namespace critreg
