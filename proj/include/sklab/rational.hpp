#pragma once

#include <gmpxx.h>

#include <string>

namespace sklab {

using Rational = mpq_class;

/// Accepts "p/q", integers and finite decimals ("-1.25"); the result is
/// canonicalized. Throws InvalidArgument otherwise.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" with q > 0 (integers as "n/1").
std::string to_string(const Rational& q);

} // namespace sklab
