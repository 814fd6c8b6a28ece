#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace qreg {

/// Exact arbitrary-precision rational. All epsilons, lambdas and distances
/// reported by the library are values of this type.
using Rational = boost::multiprecision::cpp_rational;

class RationalFormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses "p/q", an integer "p", or a finite decimal "1.25" / ".5" exactly.
/// Rejects signs other than a leading '-' and empty denominators.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Decimal rendering with `digits` significant digits; switches to
/// scientific notation for very small magnitudes.
std::string to_decimal(const Rational& r, int digits = 10);

/// base^exp for a nonnegative exponent.
Rational power(const Rational& base, unsigned exp);

} // namespace qreg
