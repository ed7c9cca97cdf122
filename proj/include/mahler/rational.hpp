#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mahler {

/// Exact rational number; GMP keeps it in lowest terms with a positive
/// denominator after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& x);

/// Parses "p" or "p/q" (optional leading '-'); throws InvalidInput otherwise.
Rational parse_rational(std::string_view text);

}  // namespace mahler
