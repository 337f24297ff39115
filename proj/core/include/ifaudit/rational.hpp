#pragma once

#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace ifaudit {

// Exact rational arithmetic for distribution tables. Equality of
// distributions must be transitive, which rules out floating point here.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Builds a rational from decimal integer strings. Throws InvalidSpec on a
// zero denominator or a malformed digit string.
Rational make_rational(const std::string& numerator, const std::string& denominator);

// (numerator, denominator) in lowest terms, denominator positive.
std::pair<std::string, std::string> rational_parts(const Rational& r);

std::string rational_to_string(const Rational& r);

}  // namespace ifaudit
