#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace critreg {

// Exact rational scalar used by all combinatorial dynamics. cpp_rational keeps
// the denominator positive and the fraction in lowest terms after every
// operation, which is exactly the invariant the rest of the code relies on.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

// "num/den" in lowest terms; integers print without the "/1".
std::string rat_to_string(const Rat& r);

// Accepts "num", "num/den", optional leading '-'. Throws std::invalid_argument.
Rat parse_rat(std::string_view text);

// x = a / 2^k with a odd (or x integer).
bool is_dyadic(const Rat& x);

// x = 2^k for some integer k (used for slope membership tests).
bool is_power_of_two(const Rat& x);

}  // namespace critreg
