#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace mdist {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational, always in lowest terms with positive denominator.
// Every quantity in this library (distances, costs, fractions, LP data,
// flow amounts) is one of these; no floating point enters any computation.
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q" or a plain integer, with optional leading '-'.
// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

// Canonical text form: "p/q", or "p" when the denominator is 1.
// parse_rational(format_rational(q)) == q, bit-exactly.
std::string format_rational(const Rational& q);

double approx(const Rational& q);

}  // namespace mdist
