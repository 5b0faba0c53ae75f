#pragma once

#include "daestruct/system.hpp"

#include <string>

namespace daestruct {

/// Parses the system DSL:
///
///   params: g L
///   unknowns: x1 x2 lam
///   equations:
///     x1'' - lam*x1
///     x2'' - lam*x2 + g = 0
///     x1^2 + x2^2 - L^2
///
/// Derivatives are written with repeated primes or D(x, k); '^' takes integer
/// powers; '#' starts a line comment. Throws ParseError / UndeclaredSymbol /
/// NonIntegerExponent with line and column info.
DAESystem parse_system(const std::string& text);

/// Canonical DSL serialization; parse_system(serialize_system(s)) == s.
std::string serialize_system(const DAESystem& s);

/// Parses a single expression in the context of an existing system's symbols.
DiffPoly parse_poly(const DAESystem& context, const std::string& expr);

/// Renders a polynomial with the system's variable names.
std::string poly_to_string(const DAESystem& s, const DiffPoly& p);

} // namespace daestruct
