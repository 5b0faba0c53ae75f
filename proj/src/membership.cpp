#include "daestruct/membership.hpp"

#include "daestruct/errors.hpp"
#include "daestruct/jacobi.hpp"

#include <algorithm>

namespace daestruct {

long order_bound(int sigma, int e, const DiffPoly& f) {
    if (f.is_zero()) throw BadIndices("order_bound needs f != 0");
    long ordF = f.order();
    if (ordF == NEG_INF) ordF = 0;
    long N = sigma + std::max(-1L, ordF - e);
    return std::max(0L, N);
}

long order_bound_syntactic(const DAESystem& s, const DiffPoly& f) {
    OrderMatrix om = order_matrix(s);
    long jE0 = jacobi_number(ExtMatrix(om.E0));
    long ordF = f.order();
    if (ordF == NEG_INF) ordF = 0;
    return jE0 - om.minE0 + std::max(ordF, static_cast<long>(s.e()) - 1);
}

Integer degree_bound(long D, int r, long N, const DiffPoly& f) {
    if (D < 1) throw BadIndices("degree_bound needs D >= 1");
    Integer pow;
    unsigned long exp = static_cast<unsigned long>(r) * static_cast<unsigned long>(N + 1);
    mpz_ui_pow_ui(pow.get_mpz_t(), static_cast<unsigned long>(D), exp);
    return Integer(std::max(0L, f.total_degree())) + pow;
}

MembershipBounds membership_bounds(const DAESystem& s, int sigma, const DiffPoly& f) {
    MembershipBounds b;
    b.D = 1;
    for (const auto& g : s.equations) b.D = std::max(b.D, g.total_degree());
    b.N = order_bound(sigma, s.e(), f);
    b.NSyntactic = order_bound_syntactic(s, f);
    b.degreeBound = degree_bound(b.D, s.r(), b.N, f);
    return b;
}

namespace {

using Cofactors = std::map<std::pair<int, int>, DiffPoly>;

struct BasisElement {
    DiffPoly poly;     // monic in its leading monomial
    Cofactors combo;   // poly = sum combo_{ij} * f_i^{(j)}
};

void combo_axpy(Cofactors& acc, const Cofactors& other, const DiffPoly& factor) {
    for (const auto& [key, g] : other) {
        DiffPoly add = factor * g;
        auto it = acc.find(key);
        if (it == acc.end()) {
            if (!add.is_zero()) acc.emplace(key, std::move(add));
        } else {
            it->second += add;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

// Row-echelon container keyed by leading monomial.
class Basis {
public:
    // Reduces poly in place, accumulating the used basis combinations into
    // `used`; returns when the leading monomial has no basis match.
    void reduce(DiffPoly& poly, Cofactors& used) const {
        while (!poly.is_zero()) {
            auto lead = std::prev(poly.terms().end());
            auto it = table_.find(lead->first);
            if (it == table_.end()) return;
            DiffPoly factor(lead->second);
            combo_axpy(used, it->second.combo, factor);
            poly -= it->second.poly.scaled(lead->second);
        }
    }

    // Returns false when the column was linearly dependent. `seed` is the
    // column's own combination (poly == sum seed_ij * G_ij on entry).
    bool insert(DiffPoly poly, Cofactors seed) {
        Cofactors used;
        reduce(poly, used);
        if (poly.is_zero()) return false;
        // reduce keeps poly + sum used*G invariant, so poly == (seed - used)*G
        combo_axpy(seed, used, DiffPoly(Rational(-1)));
        auto lead = std::prev(poly.terms().end());
        Rational inv = 1 / lead->second;
        BasisElement el;
        el.poly = poly.scaled(inv);
        for (auto& [key, g] : seed) el.combo.emplace(key, g.scaled(inv));
        table_.emplace(el.poly.terms().rbegin()->first, std::move(el));
        return true;
    }

    size_t size() const { return table_.size(); }

private:
    std::map<Monomial, BasisElement> table_;
};

void monomials_of_degree(const std::vector<DerivVar>& vars, size_t pos, long deg, Monomial acc,
                         std::vector<Monomial>& out) {
    if (deg == 0) {
        out.push_back(std::move(acc));
        return;
    }
    if (pos == vars.size()) return;
    if (pos + 1 == vars.size()) {
        out.push_back(acc * Monomial(vars[pos], static_cast<uint32_t>(deg)));
        return;
    }
    for (long take = deg; take >= 0; --take) {
        Monomial next = take == 0 ? acc : acc * Monomial(vars[pos], static_cast<uint32_t>(take));
        monomials_of_degree(vars, pos + 1, deg - take, std::move(next), out);
    }
}

std::vector<Monomial> monomials_of_degree(const std::vector<DerivVar>& vars, long deg) {
    std::vector<Monomial> out;
    monomials_of_degree(vars, 0, deg, Monomial(), out);
    return out;
}

} // namespace

std::optional<Representation> find_representation(ProlongationCache& cache, const DiffPoly& f,
                                                  long N, const MembershipOptions& opts) {
    if (N < 0) throw BadIndices("find_representation needs N >= 0");
    if (f.is_zero()) return Representation{};
    const DAESystem& s = cache.system();
    long degF = f.total_degree();
    long degCap = opts.degCap >= 0 ? opts.degCap : degF + 4;
    if (degCap < degF) throw BadIndices("degCap below deg f");

    // Cofactor monomials only need the variables of f and of the generators in
    // play: substituting zero for any other variable maps a representation to
    // one inside this universe.
    std::vector<std::vector<DerivVar>> universe(N + 1);
    std::vector<DerivVar> acc = f.variables();
    for (long j = 0; j <= N; ++j) {
        for (int i = 0; i < s.r(); ++i)
            for (DerivVar v : cache.row(i, j).variables()) acc.push_back(v);
        std::sort(acc.begin(), acc.end());
        acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
        universe[j] = acc;
    }

    Basis basis;
    long columns = 0;
    auto try_extract = [&]() -> std::optional<Representation> {
        DiffPoly rem = f;
        Cofactors used;
        basis.reduce(rem, used);
        if (!rem.is_zero()) return std::nullopt;
        Representation rep;
        rep.cofactors = std::move(used);
        DiffPoly check = expand_representation(cache, rep);
        if (!(check == f)) throw Error("internal: representation failed exact re-expansion");
        return rep;
    };

    // Degree passes start at 0: a representation of f may use products
    // m * f_i^{(j)} of total degree below deg f.
    for (long d = 0; d <= degCap; ++d) {
        for (long j = 0; j <= N; ++j) {
            for (int i = 0; i < s.r(); ++i) {
                const DiffPoly& G = cache.row(i, static_cast<int>(j));
                if (G.is_zero()) continue;
                long degG = G.total_degree();
                // Insert all columns m*G with deg m + deg G == d (smaller d
                // already handled in earlier passes).
                long dm = d - degG;
                if (dm < 0) continue;
                for (const Monomial& m : monomials_of_degree(universe[j], dm)) {
                    if (++columns > opts.maxColumns)
                        throw CapExceeded(std::to_string(columns) + " columns at degree " +
                                          std::to_string(d));
                    Cofactors combo;
                    combo.emplace(std::make_pair(i, static_cast<int>(j)),
                                  DiffPoly(Rational(1), m));
                    basis.insert(DiffPoly(Rational(1), m) * G, std::move(combo));
                }
            }
            if (auto rep = try_extract()) return rep;
        }
    }
    return std::nullopt;
}

DiffPoly expand_representation(ProlongationCache& cache, const Representation& rep) {
    DiffPoly sum;
    for (const auto& [key, g] : rep.cofactors) sum += g * cache.row(key.first, key.second);
    return sum;
}

} // namespace daestruct
