#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lca {

/// Exact rational scalar. GMP keeps mpq_class values canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
using Rational = mpq_class;

/// Parses "p" or "p/q" (optional leading sign, q > 0). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Prints "p" for integers and "p/q" otherwise.
std::string to_string(const Rational& r);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace lca
