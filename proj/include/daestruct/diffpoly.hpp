#pragma once

#include "daestruct/rational.hpp"
#include "daestruct/variables.hpp"

#include <functional>
#include <limits>
#include <map>
#include <vector>

namespace daestruct {

// Extended integer used for derivation orders: NEG_INF marks "does not occur".
constexpr long NEG_INF = std::numeric_limits<long>::min();

// A power product of derivative variables; exponents are strictly positive and
// the factor list is kept sorted by the canonical DerivVar order.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(DerivVar v, uint32_t exp = 1);

    const std::vector<std::pair<DerivVar, uint32_t>>& factors() const { return factors_; }
    long total_degree() const { return totalDegree_; }
    bool is_one() const { return factors_.empty(); }

    Monomial operator*(const Monomial& other) const;
    /// Divides by v once; second result false if v does not occur.
    std::pair<Monomial, bool> divide_once(DerivVar v) const;
    uint32_t exponent(DerivVar v) const;

    // Graded order: total degree first, then lexicographic on the sorted factor
    // list. Total and deterministic; used for canonical term ordering.
    friend bool operator<(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.factors_ == b.factors_;
    }

private:
    std::vector<std::pair<DerivVar, uint32_t>> factors_;
    long totalDegree_ = 0;
};

// Sparse multivariate polynomial over Q in derivative variables and parameters.
// Invariant: no zero coefficients stored; equal polynomials have equal term maps.
class DiffPoly {
public:
    DiffPoly() = default;
    explicit DiffPoly(const Rational& c);
    DiffPoly(const Rational& c, const Monomial& m);
    static DiffPoly variable(DerivVar v);
    static DiffPoly constant(long c) { return DiffPoly(Rational(c)); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    DiffPoly operator+(const DiffPoly& o) const;
    DiffPoly operator-(const DiffPoly& o) const;
    DiffPoly operator-() const;
    DiffPoly operator*(const DiffPoly& o) const;
    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly scaled(const Rational& c) const;
    friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }

    /// Formal partial derivative with respect to a single indeterminate.
    DiffPoly partial(DerivVar v) const;

    /// Total derivative: delta = 0 on coefficients and parameters, and
    /// X_j^{(l)} -> X_j^{(l+1)}.
    DiffPoly total_derivative() const;

    /// Max l with X_j^{(l)} occurring, or NEG_INF when X_j does not occur.
    long order_in_var(int32_t varIndex) const;
    /// Max derivation order over all unknowns occurring, NEG_INF if none.
    long order() const;
    long total_degree() const; // max over terms; NEG_INF-free: 0 for constants, -1 for zero

    /// Exact evaluation; throws MissingAssignment when a variable is unassigned.
    Rational evaluate(const std::function<const Rational*(DerivVar)>& lookup) const;
    Rational evaluate(const std::map<DerivVar, Rational>& assignment) const;

    /// All distinct variables occurring (sorted).
    std::vector<DerivVar> variables() const;

    void add_term(const Monomial& m, const Rational& c);

private:
    std::map<Monomial, Rational> terms_;
};

} // namespace daestruct
