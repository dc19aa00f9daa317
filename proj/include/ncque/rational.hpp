#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncque {

/// Exact rational number; always kept in canonical form (gcd 1, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or "p" with an optional sign. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

/// base^exp with the convention 0^0 = 1.
Rational ipow(const Rational& base, unsigned exp);

}  // namespace ncque
