#include "daestruct/index.hpp"

#include "daestruct/errors.hpp"

#include <algorithm>

namespace daestruct {

long mu_value(ProlongationCache& cache, int k, int i, const RankOracle& oracle) {
    if (k == 0) return 0;
    const DAESystem& s = cache.system();
    if (k < 0 || i < s.e() - 1) throw BadIndices("mu needs k >= 0 and i >= e-1");
    PseudoJacobian J = PseudoJacobian::build(cache, k, i);
    return static_cast<long>(k) * s.r() - oracle.rank(cache, J);
}

IndexResult differentiation_index(ProlongationCache& cache, const RankOracle& oracle,
                                  int maxKOverride) {
    const DAESystem& s = cache.system();
    OrderMatrix om = order_matrix(s);
    long jE0 = jacobi_number(ExtMatrix(om.E0));
    int kMax = maxKOverride > 0
                   ? maxKOverride
                   : static_cast<int>((om.e - om.minE0) + jE0 + 1);
    int i = s.e() - 1;

    IndexResult out;
    out.kMax = kMax;
    out.mu.i = i;
    out.mu.oracle = oracle.describe();
    out.mu.values.push_back(0);
    for (int k = 1; k <= kMax; ++k) {
        long mk = mu_value(cache, k, i, oracle);
        long prev = out.mu.values.back();
        out.mu.values.push_back(mk);
        if (mk == prev) {
            out.sigma = k - 1;
            return out;
        }
        if (mk < prev)
            throw NotStabilized(kMax); // monotonicity violated: oracle ranks inconsistent
    }
    throw NotStabilized(kMax);
}

long order_of_ideal(const DAESystem& s, int sigma, long muSigma) {
    (void)sigma;
    long er = static_cast<long>(s.e()) * s.r();
    if (er < muSigma) throw NegativeOrder(er, muSigma);
    return er - muSigma;
}

HKData hk_data(const DAESystem& s, long ord) {
    HKData h;
    h.linearCoeff = s.n - s.r();
    h.constantTerm = ord;
    h.regularityBound = s.e() - 1;
    return h;
}

long trdeg_report(const DAESystem& s, int i, int k, long mu) {
    (void)k;
    return static_cast<long>(s.n - s.r()) * (i + 1) + static_cast<long>(s.e()) * s.r() - mu;
}

IndexReport analyze(const DAESystem& s, const AnalyzeOptions& opts) {
    s.validate();
    ProlongationCache cache(s);
    IndexReport rep;
    rep.n = s.n;
    rep.r = s.r();
    rep.e = s.e();
    rep.orders = order_matrix(s);
    rep.minE0 = rep.orders.minE0;
    rep.bounds = jacobi_bounds(s);
    rep.dualE0 = koenig_dual(ExtMatrix(rep.orders.E0));
    rep.seed = opts.seed;
    rep.trials = opts.trials;

    RankOracle oracle = opts.witness
                            ? RankOracle::witness_oracle(*opts.witness, opts.policy())
                            : RankOracle::generic_oracle(opts.seed, opts.trials);
    rep.oracleDescription = oracle.describe();

    IndexResult idx = differentiation_index(cache, oracle, opts.maxK);
    rep.mu = idx.mu;
    rep.sigma = idx.sigma;
    long muSigma = rep.mu.values[rep.sigma];
    rep.order = order_of_ideal(s, rep.sigma, muSigma);
    rep.hk = hk_data(s, rep.order);

    int iDefault = rep.e - 1;
    for (int k = 0; k <= rep.sigma + 1 && k < static_cast<int>(rep.mu.values.size()); ++k)
        rep.trdeg.push_back(trdeg_report(s, iDefault, k, rep.mu.values[k]));

    // i-independence: recompute the whole mu row at i = e and e+1
    rep.iIndependence = true;
    for (int i : {iDefault, iDefault + 1, iDefault + 2}) {
        std::vector<long> row;
        for (int k = 0; k < static_cast<int>(rep.mu.values.size()); ++k)
            row.push_back(k == 0 ? 0 : mu_value(cache, k, i, oracle));
        if (row != rep.mu.values) rep.iIndependence = false;
        rep.muByI.push_back(std::move(row));
    }

    // bound checks
    long er = static_cast<long>(rep.e) * rep.r;
    rep.indexBoundHolds = rep.sigma + rep.order <= rep.bounds.indexBoundRHS;
    rep.orderBoundHolds = rep.bounds.J_E == NEG_INF ? false : rep.order <= rep.bounds.J_E;
    rep.muSandwichHolds = true;
    for (int k = 0; k < static_cast<int>(rep.mu.values.size()); ++k) {
        if (k < rep.e - rep.minE0) continue;
        long mk = rep.mu.values[k];
        if (mk < er - rep.bounds.J_E0 || mk > er - rep.order) rep.muSandwichHolds = false;
    }

    // hypothesis diagnostic and quasi-regularity
    if (opts.witness) {
        for (int k = 1; k <= rep.sigma + 1; ++k) {
            int needed = 0;
            PseudoJacobian J = PseudoJacobian::build(cache, k, iDefault);
            for (DerivVar v : J.variables())
                if (!v.isParam) needed = std::max(needed, static_cast<int>(v.order));
            const Witness& w = oracle.extended_witness(cache, needed);
            rep.hypothesis.push_back(hypothesis_diagnostic(cache, k, iDefault, w, opts.seed,
                                                           opts.trials));
        }
        for (const auto& h : rep.hypothesis)
            if (!h.agree) rep.hypothesisAgree = false;

        rep.quasiRegularAll = true;
        for (int k = 1; k <= rep.sigma + 1; ++k) {
            const Witness& w = oracle.extended_witness(cache, k - 1 + rep.e);
            bool ok = check_quasiregularity(cache, k, w);
            rep.quasiRegular.push_back(ok);
            if (!ok) rep.quasiRegularAll = false;
        }
        const Witness& base = oracle.extended_witness(cache, rep.e);
        for (const auto& [v, val] : base.values)
            if (v.isParam || v.order <= rep.e) rep.basePoint.emplace(v, val);
    } else {
        rep.quasiRegularAll = true;
        for (int k = 1; k <= rep.sigma + 1; ++k) {
            bool ok = check_quasiregularity_generic(cache, k, opts.seed, opts.trials);
            rep.quasiRegular.push_back(ok);
            if (!ok) rep.quasiRegularAll = false;
        }
    }

    return rep;
}

} // namespace daestruct
