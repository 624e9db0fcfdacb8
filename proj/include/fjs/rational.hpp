#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost 1.74's mixed (integer, rational) equality templates recurse forever
// under C++20 rewritten comparison candidates. Exact non-template overloads
// win overload resolution and sidestep them.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(std::int64_t a, const rational<std::int64_t>& b) { return b == a; }
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == static_cast<std::int64_t>(b); }
inline bool operator==(int a, const rational<std::int64_t>& b) { return b == static_cast<std::int64_t>(a); }
}  // namespace boost

namespace fjs {

/// Exact time value. Every processing time, start time and model
/// coefficient in the library is a Rational so that admissibility and
/// feasibility checks never depend on floating point rounding.
using Rational = boost::rational<std::int64_t>;

inline bool is_integral(const Rational& r) { return r.denominator() == 1; }

/// "7" for integers, "7/2" otherwise.
std::string to_string(const Rational& r);

/// Shortest exact decimal ("3.5", "-0.125") when the denominator has only
/// factors 2 and 5; empty string otherwise.
std::string to_exact_decimal(const Rational& r);

/// Rounded decimal with a fixed number of digits after the point.
std::string to_fixed(const Rational& r, int digits);

/// Parses "12", "-3/4", "2.75" or "1e-3" exactly. Throws FjsError on
/// malformed text.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

Rational ceil_div(const Rational& a, std::int64_t b);

}  // namespace fjs
