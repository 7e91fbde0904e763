#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hetbaker {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q" or a plain integer. Decimal notation is rejected so that
// exact-mode parameters cannot silently lose precision on the way in.
Rational parse_rational(std::string_view text);

// "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& r);

double to_double(const Rational& r);

}  // namespace hetbaker
