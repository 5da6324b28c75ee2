#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace wkit {

/// Arbitrary precision rational, always kept in canonical reduced form.
using Rational = mpq_class;

/// Parses "n", "-n" or "p/q" (q > 0 after normalization, q != 0).
/// Throws LoadError on malformed text.
Rational parse_rational(std::string_view text);

/// "n" for integers, "p/q" otherwise.
std::string format_rational(const Rational& value);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace wkit
