#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace qpg {

// Exact arithmetic used throughout: arbitrary-precision integers and rationals.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

Int binomial(unsigned long n, unsigned long k);
Int int_pow(const Int& base, unsigned long exp);

// "p" when the denominator is 1, "p/q" otherwise; parsing accepts both.
std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

}  // namespace qpg
