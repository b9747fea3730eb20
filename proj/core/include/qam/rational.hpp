#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace qam {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "4/13", or "1" and "0" for integers.
std::string to_string(const Rational& value);

/// Accepts "4/13", "7", "0.25" and "-1.5"; decimals convert exactly.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

}  // namespace qam
