#pragma once

#include <gmpxx.h>

#include <string>

namespace tfree {

/// Exact scalars. mpq_class keeps itself canonical under arithmetic; values
/// built from a raw numerator/denominator pair go through make_rational().
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p" or "p/q" (optional leading sign). Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

Integer binomial(unsigned long n, unsigned long k);

}  // namespace tfree
