#include "daestruct/witness.hpp"

#include "daestruct/errors.hpp"
#include "daestruct/jacobi.hpp"

#include <algorithm>
#include <random>

namespace daestruct {

namespace {

// ---------------------------------------------------------------------------
// Scalar types for the extension engine. Rational runs the plain extension;
// Jet1 carries an exact first-order gradient through every solve, which gives
// Newton projection its Jacobian.

struct Jet1 {
    Rational v;
    std::vector<Rational> g; // empty means zero gradient

    Jet1() : v(0) {}
    explicit Jet1(Rational val) : v(std::move(val)) {}
    Jet1(Rational val, std::vector<Rational> grad) : v(std::move(val)), g(std::move(grad)) {}

    bool grad_zero() const { return g.empty(); }

    Jet1 operator+(const Jet1& o) const {
        Jet1 out(Rational(v + o.v));
        if (grad_zero()) out.g = o.g;
        else if (o.grad_zero()) out.g = g;
        else {
            out.g = g;
            for (size_t i = 0; i < o.g.size(); ++i) out.g[i] += o.g[i];
        }
        return out;
    }
    Jet1 operator-() const {
        Jet1 out(Rational(-v));
        out.g.reserve(g.size());
        for (const auto& x : g) out.g.push_back(Rational(-x));
        return out;
    }
    Jet1 operator-(const Jet1& o) const { return *this + (-o); }
    Jet1 operator*(const Jet1& o) const {
        Jet1 out(Rational(v * o.v));
        if (!grad_zero() || !o.grad_zero()) {
            size_t n = std::max(g.size(), o.g.size());
            out.g.assign(n, Rational(0));
            for (size_t i = 0; i < g.size(); ++i) out.g[i] += g[i] * o.v;
            for (size_t i = 0; i < o.g.size(); ++i) out.g[i] += v * o.g[i];
        }
        return out;
    }
    Jet1 operator/(const Jet1& o) const {
        // (a/b)' = (a'b - ab')/b^2
        Jet1 out(Rational(v / o.v));
        if (!grad_zero() || !o.grad_zero()) {
            size_t n = std::max(g.size(), o.g.size());
            out.g.assign(n, Rational(0));
            Rational b2 = o.v * o.v;
            for (size_t i = 0; i < g.size(); ++i) out.g[i] += g[i] / o.v;
            for (size_t i = 0; i < o.g.size(); ++i) out.g[i] -= v * o.g[i] / b2;
        }
        return out;
    }
    bool value_zero() const { return v == 0; }
};

inline const Rational& value_of(const Rational& s) { return s; }
inline const Rational& value_of(const Jet1& s) { return s.v; }

inline Rational scalar_from(const Rational& q, const Rational&) { return q; }
inline Jet1 scalar_from(const Rational& q, const Jet1&) { return Jet1(q); }

inline bool is_zero(const Rational& s) { return s == 0; }
inline bool is_zero(const Jet1& s) { return s.value_zero() && s.grad_zero(); }

// ---------------------------------------------------------------------------
// Affine form over undetermined-coordinate symbols.

template <class S>
struct LinForm {
    S c{};
    std::map<int, S> terms; // symbol id -> coefficient

    bool is_const() const { return terms.empty(); }

    void add_scaled(const LinForm& o, const S& factor) {
        c = c + o.c * factor;
        for (const auto& [id, coef] : o.terms) {
            auto it = terms.find(id);
            if (it == terms.end()) {
                S nc = coef * factor;
                if (!is_zero(nc)) terms.emplace(id, std::move(nc));
            } else {
                it->second = it->second + coef * factor;
                if (is_zero(it->second)) terms.erase(it);
            }
        }
    }
};

template <class S>
class Extender {
public:
    Extender(ProlongationCache& cache, Rational residualBound, const ExtendPolicy& policy,
             bool strict)
        : cache_(cache), sys_(cache.system()), residualBound_(std::move(residualBound)),
          policy_(policy), strict_(strict), rng_(policy.seed) {
        pivotEps_ = residualBound_ * 1000000;
        eqOrder_.reserve(sys_.r());
        for (int i = 0; i < sys_.r(); ++i) eqOrder_.push_back(sys_.equation_order(i));
    }

    void seed(DerivVar v, S val) {
        LinForm<S> lf;
        lf.c = std::move(val);
        values_[v] = std::move(lf);
    }

    void run_levels(int endLevel) {
        for (int level = 0; level <= endLevel; ++level)
            for (int eq = 0; eq < sys_.r(); ++eq) {
                int p = level - eqOrder_[eq];
                if (p >= 0) process_row(eq, p);
            }
    }

    // Policy values for coordinates no equation ever touches.
    void assign_untouched(int targetOrder) {
        for (int j = 0; j < sys_.n; ++j)
            for (int l = 0; l <= targetOrder; ++l) {
                DerivVar v = DerivVar::unknown(j, l);
                if (!values_.count(v)) seed(v, scalar_from(policy_value(v), S{}));
            }
    }

    // Remaining free symbols get policy values, in creation order.
    void finalize_symbols() {
        for (size_t id = 0; id < symbolVar_.size(); ++id) {
            if (solved_[id]) continue;
            LinForm<S> repl;
            repl.c = scalar_from(policy_value(symbolVar_[id]), S{});
            substitute(static_cast<int>(id), repl);
        }
    }

    std::map<DerivVar, S> values() const {
        std::map<DerivVar, S> out;
        for (const auto& [v, lf] : values_) {
            if (!lf.is_const()) throw Error("internal: unfinalized coordinate in extension");
            out.emplace(v, lf.c);
        }
        return out;
    }

    const std::vector<std::pair<std::pair<int, int>, S>>& constraints() const {
        return constraints_;
    }

private:
    Rational policy_value(DerivVar v) {
        auto pin = policy_.pins.find(v);
        if (pin != policy_.pins.end()) return pin->second;
        std::uniform_int_distribution<long> num(-1000, 1000);
        std::uniform_int_distribution<long> den(1, 32);
        return make_rational(num(rng_), den(rng_));
    }

    LinForm<S>& value_of_var(DerivVar v) {
        auto it = values_.find(v);
        if (it != values_.end()) return it->second;
        if (v.isParam) throw MissingAssignment(sys_.param_name(v.index));
        // fresh symbol
        int id = static_cast<int>(symbolVar_.size());
        symbolVar_.push_back(v);
        solved_.push_back(false);
        LinForm<S> lf;
        lf.c = S{};
        lf.terms.emplace(id, scalar_from(Rational(1), S{}));
        return values_.emplace(v, std::move(lf)).first->second;
    }

    LinForm<S> eval_poly(const DiffPoly& f, int eq, int p) {
        LinForm<S> acc;
        acc.c = S{};
        for (const auto& [mono, coef] : f.terms()) {
            LinForm<S> prod;
            prod.c = scalar_from(coef, S{});
            for (const auto& [v, exp] : mono.factors()) {
                for (uint32_t t = 0; t < exp; ++t) {
                    const LinForm<S>& val = value_of_var(v);
                    prod = multiply(prod, val, eq, p);
                }
            }
            acc.add_scaled(prod, scalar_from(Rational(1), S{}));
        }
        return acc;
    }

    LinForm<S> multiply(const LinForm<S>& a, const LinForm<S>& b, int eq, int p) {
        if (!a.is_const() && !b.is_const())
            throw InconsistentWitness(
                "equation " + std::to_string(eq + 1) + " prolonged " + std::to_string(p) +
                " times is nonlinear in undetermined coordinates; seed the witness to a "
                "higher consistent order");
        const LinForm<S>& lin = a.is_const() ? b : a;
        const S& factor = a.is_const() ? a.c : b.c;
        LinForm<S> out;
        out.c = S{};
        out.add_scaled(lin, factor);
        return out;
    }

    void process_row(int eq, int p) {
        LinForm<S> lf = eval_poly(cache_.row(eq, p), eq, p);
        if (lf.is_const()) {
            constraints_.push_back({{eq, p}, lf.c});
            if (strict_ && rational_abs(value_of(lf.c)) > residualBound_)
                throw InconsistentWitness(
                    "equation " + std::to_string(eq + 1) + " prolonged " + std::to_string(p) +
                    " times evaluates to " + rational_to_string(value_of(lf.c)));
            return;
        }
        // Pivot on the highest-order undetermined coordinate whose coefficient
        // is safely nonzero (the diagonal d F / d X^{(e)} entries in the
        // generic case).
        int pivot = -1;
        for (const auto& [id, coef] : lf.terms) {
            if (!pivot_eligible(coef)) continue;
            if (pivot < 0 || pivot_before(id, pivot)) pivot = id;
        }
        if (pivot < 0)
            throw RankDeficient("no admissible pivot for equation " + std::to_string(eq + 1) +
                                " prolonged " + std::to_string(p) + " times");
        S pivCoef = lf.terms.at(pivot);
        lf.terms.erase(pivot);
        LinForm<S> repl;
        S negInvFactor = scalar_from(Rational(-1), S{}) / pivCoef;
        repl.c = lf.c * negInvFactor;
        for (const auto& [id, coef] : lf.terms) {
            S nc = coef * negInvFactor;
            if (!is_zero(nc)) repl.terms.emplace(id, std::move(nc));
        }
        substitute(pivot, repl);
    }

    bool pivot_eligible(const S& coef) const {
        const Rational& v = value_of(coef);
        if (v == 0) return false;
        if (residualBound_ > 0 && rational_abs(v) <= pivotEps_) return false;
        return true;
    }

    // Highest derivation order first, then lowest variable index, then oldest.
    bool pivot_before(int a, int b) const {
        DerivVar va = symbolVar_[a], vb = symbolVar_[b];
        if (va.order != vb.order) return va.order > vb.order;
        if (va.index != vb.index) return va.index < vb.index;
        return a < b;
    }

    void substitute(int symId, const LinForm<S>& repl) {
        solved_[symId] = true;
        for (auto& [v, lf] : values_) {
            auto it = lf.terms.find(symId);
            if (it == lf.terms.end()) continue;
            S coef = it->second;
            lf.terms.erase(it);
            lf.add_scaled(repl, coef);
        }
    }

    ProlongationCache& cache_;
    const DAESystem& sys_;
    Rational residualBound_;
    Rational pivotEps_;
    const ExtendPolicy& policy_;
    bool strict_;
    std::mt19937_64 rng_;
    std::vector<int> eqOrder_;
    std::map<DerivVar, LinForm<S>> values_;
    std::vector<DerivVar> symbolVar_;
    std::vector<bool> solved_;
    std::vector<std::pair<std::pair<int, int>, S>> constraints_; // ((eq, p), residual)
};

// Constraints on coordinates of order <= i are all implied by prolongation
// rows of level <= i + sigma, and sigma <= J(E0) + e - min eps0. Running this
// many levels past the target order determines every coordinate the equations
// determine at all.
int determination_horizon(const DAESystem& s) {
    OrderMatrix om = order_matrix(s);
    long jE0 = jacobi_number(ExtMatrix(om.E0));
    return static_cast<int>(std::max<long>(om.e, jE0 + om.e - om.minE0));
}

void check_parameters(const DAESystem& s, const Witness& w) {
    for (size_t i = 0; i < s.paramNames.size(); ++i)
        if (!w.find(DerivVar::param(static_cast<int>(i)))) throw MissingAssignment(s.paramNames[i]);
}

} // namespace

Rational ExtensionRun::max_abs_residual(int maxP) const {
    Rational best(0);
    for (const auto& c : constraints)
        if (c.p <= maxP) best = std::max(best, rational_abs(c.residual));
    return best;
}

ExtensionRun extend_witness_run(ProlongationCache& cache, const Witness& w, int targetOrder,
                                const ExtendPolicy& policy) {
    const DAESystem& s = cache.system();
    check_parameters(s, w);
    if (targetOrder < w.maxOrder) targetOrder = w.maxOrder;

    Extender<Rational> ext(cache, w.residualBound, policy, /*strict=*/true);
    for (const auto& [v, val] : w.values) ext.seed(v, val);
    ext.run_levels(targetOrder + determination_horizon(s));
    ext.assign_untouched(targetOrder);
    ext.finalize_symbols();

    ExtensionRun run;
    run.witness.residualBound = w.residualBound;
    for (auto& [v, val] : ext.values()) run.witness.values.emplace(v, std::move(val));
    run.witness.maxOrder = targetOrder;
    for (const auto& [key, res] : ext.constraints())
        run.constraints.push_back({key.first, key.second, res, {}});
    return run;
}

Witness extend_witness(ProlongationCache& cache, const Witness& w, int targetOrder,
                       const ExtendPolicy& policy) {
    return extend_witness_run(cache, w, targetOrder, policy).witness;
}

Witness extend_witness(const DAESystem& s, const Witness& w, int targetOrder,
                       const ExtendPolicy& policy) {
    ProlongationCache cache(s);
    return extend_witness(cache, w, targetOrder, policy);
}

std::vector<ConstraintRecord> probe_constraints(ProlongationCache& cache,
                                                const std::map<DerivVar, Rational>& state,
                                                const std::vector<DerivVar>& stateVars,
                                                int maxLevel, const ExtendPolicy& policy,
                                                const Rational& residualBound) {
    Extender<Jet1> ext(cache, residualBound, policy, /*strict=*/false);
    size_t dirs = stateVars.size();
    for (const auto& [v, val] : state) {
        Jet1 j(val);
        for (size_t d = 0; d < dirs; ++d) {
            if (stateVars[d] == v) {
                j.g.assign(dirs, Rational(0));
                j.g[d] = 1;
                break;
            }
        }
        ext.seed(v, std::move(j));
    }
    ext.run_levels(maxLevel);
    std::vector<ConstraintRecord> out;
    for (const auto& [key, res] : ext.constraints()) {
        ConstraintRecord rec;
        rec.eq = key.first;
        rec.p = key.second;
        rec.residual = res.v;
        rec.gradient = res.g;
        rec.gradient.resize(dirs, Rational(0));
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace daestruct
