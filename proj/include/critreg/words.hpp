#pragma once

#include "critreg/pl_homeo.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace critreg {

// One syllable of a reduced word: generator name with a nonzero exponent.
struct Letter {
  std::string gen;
  long long exp = 0;
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Reduced word: adjacent letters have distinct generator names, exponents
// nonzero. Length is the total letter count, sum of |exp|.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters);

  static GroupWord single(std::string gen, long long exp = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  long long length() const;

  GroupWord inverse() const;
  GroupWord pow(long long n) const;
  friend GroupWord operator*(const GroupWord& a, const GroupWord& b);  // concatenate + reduce
  friend bool operator==(const GroupWord&, const GroupWord&) = default;

  std::string to_string() const;  // e.g. "a b^-2 c"

 private:
  std::vector<Letter> letters_;
  void reduce();
};

inline GroupWord word_commutator(const GroupWord& a, const GroupWord& b) {
  return a * b * a.inverse() * b.inverse();
}

using GenSet = std::map<std::string, PLHomeo>;

// Rightmost letter applied first. Throws std::invalid_argument on unbound names.
Rat evaluate_word(const GroupWord& w, const GenSet& gens, const Rat& x);
PLHomeo word_map(const GroupWord& w, const GenSet& gens);

// Visits all nonempty reduced words of length <= max_len over the given
// generator names in length-lexicographic order (names ascending, positive
// exponent before negative). The callback receives the word and the exact map
// of the whole word; return false from the callback to stop early.
void for_each_reduced_word(const GenSet& gens, int max_len,
                           const std::function<bool(const GroupWord&, const PLHomeo&)>& fn);

// Deduplicated elements of the ball of radius max_len: one entry per distinct
// map, tagged with the length-lex smallest word evaluating to it. Identity is
// excluded. Deterministic order (first-found in length-lex enumeration).
std::vector<std::pair<GroupWord, PLHomeo>> enumerate_elements(const GenSet& gens, int max_len);

// Length-lex search for a nonempty reduced word evaluating to the identity.
// Sound (the returned word is exactly the identity map); absence only means
// "no relation of length <= max_len".
std::optional<GroupWord> find_relation(const GenSet& gens, int max_len);

}  // namespace critreg
