#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace canonsym {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denom(const Rational& q) { return boost::multiprecision::denominator(q); }
inline bool is_integer(const Rational& q) { return denom(q) == 1; }
inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline std::string rational_to_string(const Rational& q) { return q.str(); }

} // namespace canonsym
