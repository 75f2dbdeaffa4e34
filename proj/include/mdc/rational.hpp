#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost 1.74 declares `integer == rational` in terms of `rational == integer`,
// and C++20 reversed candidates turn that into unbounded recursion. Exact
// non-template overloads win overload resolution and sidestep it.
namespace boost {
#define MDC_RATIONAL_INT_EQ(T)                                              \
  inline bool operator==(const rational<std::int64_t>& a, T b) {          \
    return a.numerator() == b && a.denominator() == 1;                     \
  }                                                                        \
  inline bool operator==(T b, const rational<std::int64_t>& a) {          \
    return a == b;                                                         \
  }                                                                        \
  inline bool operator!=(const rational<std::int64_t>& a, T b) {          \
    return !(a == b);                                                      \
  }                                                                        \
  inline bool operator!=(T b, const rational<std::int64_t>& a) {          \
    return !(a == b);                                                      \
  }
MDC_RATIONAL_INT_EQ(int)
MDC_RATIONAL_INT_EQ(long)
#undef MDC_RATIONAL_INT_EQ
}  // namespace boost

namespace mdc {

using Rational = boost::rational<std::int64_t>;

// "3", "-1/2".
std::string to_string(const Rational& r);

// Terminating decimal when one exists ("0.5", "2"), otherwise "a/b".
std::string to_decimal_string(const Rational& r);

// Accepts "3", "0.25", "-1.5", "1/3", "2e-1". Throws Error(Parse) otherwise.
Rational parse_rational(std::string_view text);

// Exact conversion through the shortest round-trip decimal form of x.
Rational rational_from_double(double x);

double to_double(const Rational& r);

}  // namespace mdc
