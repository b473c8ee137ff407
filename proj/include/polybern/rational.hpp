#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace polybern {

using Rational = mpq_class;

/// Thrown when a probability or rational literal cannot be parsed exactly.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "a/b", an integer, or a decimal with at most 12 fractional digits
/// into an exact canonical rational. Decimals are never rounded.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form; integers print without a denominator.
std::string to_string(const Rational& value);

/// Correctly rounded (nearest, ties to even) conversion to binary64.
/// mpq_get_d truncates, which is not good enough for last-step conversion.
double to_double(const Rational& value);

long double to_long_double(const Rational& value);

/// base^exp for a non-negative integer exponent.
Rational pow(const Rational& base, unsigned exp);

}  // namespace polybern
