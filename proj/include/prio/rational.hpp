#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace prio {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number. All game quantities (weights, delays, costs) use
// this type; no floating point enters any cost computation or comparison.
using Rational = boost::multiprecision::cpp_rational;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts "p/q", plain integers ("-3"), and decimal literals ("9.25").
// Decimal input is converted exactly (9.25 -> 37/4).
Rational parse_rational(const std::string& text);

// Lowest-terms encoding: "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& value);

inline BigInt numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline BigInt denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

}  // namespace prio
