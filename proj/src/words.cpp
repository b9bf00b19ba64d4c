#include "critreg/words.hpp"

#include <algorithm>
#include <sstream>

namespace critreg {

GroupWord::GroupWord(std::vector<Letter> letters) : letters_(std::move(letters)) { reduce(); }

GroupWord GroupWord::single(std::string gen, long long exp) {
  GroupWord w;
  if (exp != 0) w.letters_.push_back({std::move(gen), exp});
  return w;
}

void GroupWord::reduce() {
  std::vector<Letter> out;
  for (auto& l : letters_) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(std::move(l));
    }
  }
  letters_ = std::move(out);
}

long long GroupWord::length() const {
  long long n = 0;
  for (const auto& l : letters_) n += l.exp < 0 ? -l.exp : l.exp;
  return n;
}

GroupWord GroupWord::inverse() const {
  GroupWord w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back({it->gen, -it->exp});
  return w;
}

GroupWord GroupWord::pow(long long n) const {
  GroupWord acc;
  GroupWord base = n < 0 ? inverse() : *this;
  long long k = n < 0 ? -n : n;
  for (long long i = 0; i < k; ++i) acc = acc * base;
  return acc;
}

GroupWord operator*(const GroupWord& a, const GroupWord& b) {
  std::vector<Letter> cat = a.letters_;
  cat.insert(cat.end(), b.letters_.begin(), b.letters_.end());
  return GroupWord(std::move(cat));
}

std::string GroupWord::to_string() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& l : letters_) {
    if (!first) os << " ";
    os << l.gen;
    if (l.exp != 1) os << "^" << l.exp;
    first = false;
  }
  return os.str();
}

namespace {

const PLHomeo& lookup(const GenSet& gens, const std::string& name) {
  auto it = gens.find(name);
  if (it == gens.end()) throw std::invalid_argument("unbound generator name '" + name + "'");
  return it->second;
}

}  // namespace

Rat evaluate_word(const GroupWord& w, const GenSet& gens, const Rat& x) {
  Rat v = x;
  const auto& ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
    const PLHomeo& g = lookup(gens, it->gen);
    const PLHomeo gi = it->exp < 0 ? g.inverse() : g;
    long long k = it->exp < 0 ? -it->exp : it->exp;
    for (long long i = 0; i < k; ++i) v = gi(v);
  }
  return v;
}

PLHomeo word_map(const GroupWord& w, const GenSet& gens) {
  PLHomeo acc;
  const auto& ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
    const PLHomeo& g = lookup(gens, it->gen);
    acc = compose(pl_power(g, it->exp), acc);
  }
  return acc;
}

namespace {

struct Alphabet {
  std::vector<std::pair<std::string, int>> steps;  // (name, +1/-1), lex order
  std::vector<PLHomeo> maps;
  std::vector<PLHomeo> inv_maps;
};

Alphabet make_alphabet(const GenSet& gens) {
  Alphabet a;
  for (const auto& [name, g] : gens) {
    a.steps.emplace_back(name, +1);
    a.maps.push_back(g);
    a.inv_maps.push_back(g.inverse());
    a.steps.emplace_back(name, -1);
    a.maps.push_back(a.inv_maps[a.inv_maps.size() - 1]);
    a.inv_maps.push_back(g);
  }
  return a;
}

// The step stack is in reading order (stack[0] = leftmost letter; the
// rightmost letter is applied first), so appending a step composes on the
// right: map_new = map_old ∘ step. Iterative deepening over the exact depth
// gives length-lexicographic order overall.
GroupWord word_from_steps(const Alphabet& a, const std::vector<int>& steps) {
  std::vector<Letter> ls;
  ls.reserve(steps.size());
  for (int s : steps) ls.push_back({a.steps[s].first, a.steps[s].second});
  return GroupWord(std::move(ls));
}

bool cancels(const Alphabet& a, int prev, int next) {
  return a.steps[prev].first == a.steps[next].first && a.steps[prev].second == -a.steps[next].second;
}

}  // namespace

void for_each_reduced_word(const GenSet& gens, int max_len,
                           const std::function<bool(const GroupWord&, const PLHomeo&)>& fn) {
  if (gens.empty() || max_len < 1) return;
  Alphabet a = make_alphabet(gens);
  for (int depth = 1; depth <= max_len; ++depth) {
    std::vector<int> stack;
    std::vector<PLHomeo> maps{PLHomeo{}};
    std::function<bool()> rec = [&]() -> bool {
      if (static_cast<int>(stack.size()) == depth) return fn(word_from_steps(a, stack), maps.back());
      for (int s = 0; s < static_cast<int>(a.steps.size()); ++s) {
        if (!stack.empty() && cancels(a, stack.back(), s)) continue;
        stack.push_back(s);
        maps.push_back(compose(maps[maps.size() - 1], a.maps[s]));
        bool go = rec();
        maps.pop_back();
        stack.pop_back();
        if (!go) return false;
      }
      return true;
    };
    if (!rec()) return;
  }
}

std::vector<std::pair<GroupWord, PLHomeo>> enumerate_elements(const GenSet& gens, int max_len) {
  // Breadth-first over the Cayley ball with element dedup: a word whose map
  // was already reached needs no extension (its extensions are reached from
  // the first witness), so group relations prune the search.
  std::vector<std::pair<GroupWord, PLHomeo>> out;
  if (gens.empty() || max_len < 1) return out;
  Alphabet a = make_alphabet(gens);
  std::map<std::string, size_t> seen;
  seen.emplace(pl_to_string(PLHomeo{}), SIZE_MAX);
  std::vector<std::pair<GroupWord, PLHomeo>> level{{GroupWord{}, PLHomeo{}}};
  for (int depth = 1; depth <= max_len && !level.empty(); ++depth) {
    std::vector<std::pair<GroupWord, PLHomeo>> next;
    for (const auto& [w, m] : level) {
      for (int s = 0; s < static_cast<int>(a.steps.size()); ++s) {
        PLHomeo nm = compose(m, a.maps[s]);
        std::string key = pl_to_string(nm);
        if (!seen.emplace(std::move(key), out.size()).second) continue;
        GroupWord nw = w * GroupWord::single(a.steps[s].first, a.steps[s].second);
        out.emplace_back(nw, nm);
        next.emplace_back(std::move(nw), std::move(nm));
      }
    }
    level = std::move(next);
  }
  return out;
}

std::optional<GroupWord> find_relation(const GenSet& gens, int max_len) {
  if (max_len < 1) throw std::invalid_argument("find_relation: max_len must be >= 1");
  if (gens.empty()) return std::nullopt;

  Alphabet a = make_alphabet(gens);
  // Cheap incremental filter: track u = w^{-1}(x0); w(x0) = x0 iff u = x0.
  // Candidates surviving the filter get a full exact identity check.
  const Rat x0(3, 7);
  std::optional<GroupWord> found;
  for (int depth = 1; depth <= max_len && !found; ++depth) {
    std::vector<int> stack;
    std::vector<Rat> pre{x0};
    std::function<bool()> rec = [&]() -> bool {
      if (static_cast<int>(stack.size()) == depth) {
        if (pre.back() != x0) return true;
        PLHomeo m;
        for (int s : stack) m = compose(m, a.maps[s]);
        if (m.is_identity()) {
          found = word_from_steps(a, stack);
          return false;
        }
        return true;
      }
      for (int s = 0; s < static_cast<int>(a.steps.size()); ++s) {
        if (!stack.empty() && cancels(a, stack.back(), s)) continue;
        stack.push_back(s);
        pre.push_back(a.inv_maps[s](pre.back()));
        bool go = rec();
        pre.pop_back();
        stack.pop_back();
        if (!go) return false;
      }
      return true;
    };
    rec();
  }
  return found;
}

}  // namespace critreg
