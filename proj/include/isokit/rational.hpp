#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace isokit {

/// Arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a plain decimal such as "-0.125" exactly.
/// Throws ParseError on anything else or on a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or just "p" when the denominator is 1.
std::string to_string(const Rational& value);

}  // namespace isokit
