#include "daestruct/diffpoly.hpp"

#include "daestruct/errors.hpp"

#include <algorithm>

namespace daestruct {

std::string deriv_var_name(const std::string& base, int order) {
    std::string s = base;
    if (order <= 3) {
        for (int i = 0; i < order; ++i) s.push_back('\'');
    } else {
        s += "^(" + std::to_string(order) + ")";
    }
    return s;
}

Monomial::Monomial(DerivVar v, uint32_t exp) {
    if (exp > 0) {
        factors_.emplace_back(v, exp);
        totalDegree_ = exp;
    }
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial out;
    out.factors_.reserve(factors_.size() + other.factors_.size());
    auto a = factors_.begin(), ae = factors_.end();
    auto b = other.factors_.begin(), be = other.factors_.end();
    while (a != ae && b != be) {
        if (a->first < b->first) out.factors_.push_back(*a++);
        else if (b->first < a->first) out.factors_.push_back(*b++);
        else {
            out.factors_.emplace_back(a->first, a->second + b->second);
            ++a; ++b;
        }
    }
    out.factors_.insert(out.factors_.end(), a, ae);
    out.factors_.insert(out.factors_.end(), b, be);
    out.totalDegree_ = totalDegree_ + other.totalDegree_;
    return out;
}

std::pair<Monomial, bool> Monomial::divide_once(DerivVar v) const {
    Monomial out;
    out.factors_ = factors_;
    for (auto it = out.factors_.begin(); it != out.factors_.end(); ++it) {
        if (it->first == v) {
            if (it->second == 1) out.factors_.erase(it);
            else --it->second;
            out.totalDegree_ = totalDegree_ - 1;
            return {out, true};
        }
    }
    return {Monomial(), false};
}

uint32_t Monomial::exponent(DerivVar v) const {
    for (const auto& [var, e] : factors_)
        if (var == v) return e;
    return 0;
}

bool operator<(const Monomial& a, const Monomial& b) {
    if (a.totalDegree_ != b.totalDegree_) return a.totalDegree_ < b.totalDegree_;
    return a.factors_ < b.factors_;
}

DiffPoly::DiffPoly(const Rational& c) {
    if (c != 0) terms_.emplace(Monomial(), c);
}

DiffPoly::DiffPoly(const Rational& c, const Monomial& m) {
    if (c != 0) terms_.emplace(m, c);
}

DiffPoly DiffPoly::variable(DerivVar v) {
    return DiffPoly(Rational(1), Monomial(v));
}

bool DiffPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational DiffPoly::constant_term() const {
    auto it = terms_.find(Monomial());
    return it == terms_.end() ? Rational(0) : it->second;
}

void DiffPoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
    DiffPoly out = *this;
    out += o;
    return out;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

DiffPoly DiffPoly::operator-(const DiffPoly& o) const {
    DiffPoly out = *this;
    out -= o;
    return out;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, Rational(-c));
    return *this;
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, Rational(-c));
    return out;
}

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
    DiffPoly out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_)
            out.add_term(ma * mb, Rational(ca * cb));
    return out;
}

DiffPoly DiffPoly::scaled(const Rational& c) const {
    DiffPoly out;
    if (c == 0) return out;
    for (const auto& [m, coef] : terms_) out.terms_.emplace(m, Rational(coef * c));
    return out;
}

DiffPoly DiffPoly::partial(DerivVar v) const {
    DiffPoly out;
    for (const auto& [m, c] : terms_) {
        uint32_t e = m.exponent(v);
        if (e == 0) continue;
        auto [reduced, ok] = m.divide_once(v);
        (void)ok;
        out.add_term(reduced, Rational(c * e));
    }
    return out;
}

DiffPoly DiffPoly::total_derivative() const {
    // g' = sum_v dg/dv * v_next, with parameters contributing nothing
    // (delta = 0 on the base field and on parameters).
    DiffPoly out;
    for (DerivVar v : variables()) {
        if (v.isParam) continue;
        DerivVar next = DerivVar::unknown(v.index, v.order + 1);
        out += partial(v) * DiffPoly::variable(next);
    }
    return out;
}

long DiffPoly::order_in_var(int32_t varIndex) const {
    long best = NEG_INF;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.factors())
            if (!v.isParam && v.index == varIndex) best = std::max(best, static_cast<long>(v.order));
    return best;
}

long DiffPoly::order() const {
    long best = NEG_INF;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.factors())
            if (!v.isParam) best = std::max(best, static_cast<long>(v.order));
    return best;
}

long DiffPoly::total_degree() const {
    if (terms_.empty()) return -1;
    long best = 0;
    for (const auto& [m, c] : terms_) best = std::max(best, m.total_degree());
    return best;
}

Rational DiffPoly::evaluate(const std::function<const Rational*(DerivVar)>& lookup) const {
    Rational sum(0);
    for (const auto& [m, c] : terms_) {
        Rational term(c);
        for (const auto& [v, e] : m.factors()) {
            const Rational* val = lookup(v);
            if (!val) throw MissingAssignment("(index " + std::to_string(v.index) +
                                              ", order " + std::to_string(v.order) +
                                              (v.isParam ? ", param)" : ")"));
            for (uint32_t i = 0; i < e; ++i) term *= *val;
        }
        sum += term;
    }
    return sum;
}

Rational DiffPoly::evaluate(const std::map<DerivVar, Rational>& assignment) const {
    return evaluate([&](DerivVar v) -> const Rational* {
        auto it = assignment.find(v);
        return it == assignment.end() ? nullptr : &it->second;
    });
}

std::vector<DerivVar> DiffPoly::variables() const {
    std::vector<DerivVar> vars;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.factors()) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

} // namespace daestruct
