#include "critreg/rational.hpp"

namespace critreg {

std::string rat_to_string(const Rat& r) {
  BigInt n = rat_num(r), d = rat_den(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

Rat parse_rat(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rat(BigInt(std::string(text)));
    }
    BigInt n{std::string(text.substr(0, slash))};
    BigInt d{std::string(text.substr(slash + 1))};
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rat(n, d);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument("bad rational literal '" + std::string(text) + "': " + e.what());
  }
}

bool is_dyadic(const Rat& x) {
  BigInt d = rat_den(x);
  while (d % 2 == 0) d /= 2;
  return d == 1;
}

bool is_power_of_two(const Rat& x) {
  if (x <= 0) return false;
  BigInt n = rat_num(x), d = rat_den(x);
  // lowest terms: one of n, d is 1 and the other must be a power of two
  auto pow2 = [](BigInt v) {
    while (v % 2 == 0) v /= 2;
    return v == 1;
  };
  if (n == 1) return pow2(d);
  if (d == 1) return pow2(n);
  return false;
}

}  // namespace critreg
