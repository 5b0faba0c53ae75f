#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace daestruct {

// All coefficient arithmetic in the core is exact rational arithmetic.
using Rational = mpq_class;
using Integer = mpz_class;

/// Builds the canonical rational num/den (den > 0, gcd reduced).
Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

/// Parses "p", "-p", or "p/q". Throws daestruct::Error on malformed input.
Rational rational_from_string(const std::string& s);

/// Canonical form: "p" when den == 1, else "p/q".
std::string rational_to_string(const Rational& q);

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Exact decimal rendering with `digits` significant digits, round-to-nearest,
/// scientific notation. Deterministic (no floating point involved).
std::string rational_to_decimal(const Rational& q, int digits = 17);

/// Nearest rational with denominator 2^bits. Used to keep long iterations from
/// accumulating unbounded numerator/denominator sizes.
Rational round_to_dyadic(const Rational& q, unsigned bits);

double rational_to_double(const Rational& q);

/// Ten to the minus `exp10` as an exact rational (tolerances like 1e-10).
Rational pow10_inv(unsigned exp10);

} // namespace daestruct
