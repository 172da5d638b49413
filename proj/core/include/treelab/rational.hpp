#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace treelab {

using Integer = mpz_class;
using Rational = mpq_class;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Accepts "p", "-p", "p/q"; the result is canonicalized. Throws ParseError.
Rational parse_rational(std::string_view text);

inline Rational abs_value(const Rational& r) { return r < 0 ? Rational(-r) : r; }

} // namespace treelab
