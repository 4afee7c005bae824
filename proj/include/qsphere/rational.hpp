#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qsphere {

// Arbitrary-precision integers and exact fractions. Rational is always kept
// canonical: positive denominator, gcd(|num|, den) = 1.
using Int = mpz_class;
using Rational = mpq_class;

using RationalMatrix = std::vector<std::vector<Rational>>;

// Parses "p" or "p/q" (optional leading '-' on either part, q != 0) and
// canonicalizes. Throws std::invalid_argument with prefix "malformed rational".
Rational parse_rational(const std::string& text);

// Inverse of parse_rational: "p" when the denominator is 1, else "p/q".
std::string format_rational(const Rational& r);

// Nearest double (GMP rounds correctly for moderate exponents).
double to_double(const Rational& r);

// Canonical fraction num/den (den != 0). The raw two-argument mpq_class
// constructor does not reduce; this is the only sanctioned way to build a
// rational from a numerator/denominator pair.
Rational ratio(long num, long den);

// Binomial coefficient with the usual combinatorial convention:
// zero whenever n < 0, k < 0, or k > n.
Int binomial_int(long n, long k);

}  // namespace qsphere
