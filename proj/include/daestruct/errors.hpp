#pragma once

#include <stdexcept>
#include <string>

namespace daestruct {

// Base class for all library errors. The CLI maps subclasses to exit codes:
// ParseError -> 2, everything else -> 3.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int col)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line), col(col) {}
    int line;
    int col;
};

class UndeclaredSymbol : public ParseError {
public:
    UndeclaredSymbol(const std::string& name, int line, int col)
        : ParseError("undeclared symbol '" + name + "'", line, col) {}
};

class NonIntegerExponent : public ParseError {
public:
    NonIntegerExponent(int line, int col)
        : ParseError("exponent must be a nonnegative integer", line, col) {}
};

class MissingAssignment : public Error {
public:
    explicit MissingAssignment(const std::string& var)
        : Error("no value assigned to variable " + var) {}
};

class InconsistentWitness : public Error {
public:
    explicit InconsistentWitness(const std::string& msg) : Error("inconsistent witness: " + msg) {}
};

class RankDeficient : public Error {
public:
    explicit RankDeficient(const std::string& msg) : Error("rank deficient: " + msg) {}
};

class BadIndices : public Error {
public:
    explicit BadIndices(const std::string& msg) : Error("bad indices: " + msg) {}
};

class NotStabilized : public Error {
public:
    explicit NotStabilized(int kMax)
        : Error("mu sequence did not stabilize within k <= " + std::to_string(kMax) +
                "; the system violates quasi-regularity or the constant-rank hypothesis "
                "at the chosen witness/seed"),
          kMax(kMax) {}
    int kMax;
};

class NegativeOrder : public Error {
public:
    NegativeOrder(long er, long mu)
        : Error("e*r - mu_sigma = " + std::to_string(er - mu) + " < 0; rank oracle inconsistent") {}
};

class TooLarge : public Error {
public:
    explicit TooLarge(const std::string& msg) : Error("input too large: " + msg) {}
};

class InfiniteEntry : public Error {
public:
    InfiniteEntry() : Error("matrix has a -inf entry where finite entries are required") {}
};

class KTooSmall : public Error {
public:
    KTooSmall(long k, long maxEntry)
        : Error("triangular expansion needs k >= max entry (k=" + std::to_string(k) +
                ", max=" + std::to_string(maxEntry) + ")") {}
};

class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& dims)
        : Error("membership matrix would exceed the size limit: " + dims) {}
};

class ProjectionFailed : public Error {
public:
    explicit ProjectionFailed(long step)
        : Error("Newton projection stalled at step " + std::to_string(step)), step(step) {}
    long step;
};

} // namespace daestruct
