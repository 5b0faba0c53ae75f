#include "daestruct/reduce.hpp"

#include "daestruct/errors.hpp"
#include "daestruct/index.hpp"

#include <algorithm>

namespace daestruct {

namespace {

constexpr unsigned kStateQuantBits = 200;

std::vector<DerivVar> state_vars(const DAESystem& s) {
    std::vector<DerivVar> vars;
    int e = s.e();
    for (int m = 0; m < e; ++m)
        for (int j = 0; j < s.n; ++j) vars.push_back(DerivVar::unknown(j, m));
    return vars;
}

struct Stepper {
    ProlongationCache& cache;
    const DAESystem& s;
    const SimulateOptions& opts;
    ExtendPolicy policy;
    std::vector<DerivVar> stateVars;
    int sigma;
    int targetOrder;
    int probeLevel;

    Stepper(ProlongationCache& cache, const Witness& w, const SimulateOptions& opts)
        : cache(cache), s(cache.system()), opts(opts) {
        if (s.n != s.r()) throw BadIndices("simulate requires a square system (n = r)");
        int e = s.e();
        if (opts.jetDepth < std::max(1, e - 1))
            throw BadIndices("jet depth must be at least max(1, e-1)");
        if (opts.h <= 0) throw BadIndices("step size must be positive");
        policy.seed = opts.seed;
        stateVars = state_vars(s);
        if (opts.sigmaOverride >= 0) {
            sigma = opts.sigmaOverride;
        } else {
            Witness exact = w;
            RankOracle oracle = RankOracle::witness_oracle(std::move(exact), policy);
            sigma = differentiation_index(cache, oracle).sigma;
        }
        targetOrder = std::max(e - 1 + opts.jetDepth, e + sigma);
        probeLevel = e + sigma;
    }

    std::map<DerivVar, Rational> initial_state(const Witness& w) {
        // Complete the seed (e.g. solve algebraic unknowns it omits) with one
        // exact-tolerance extension pass.
        Witness seed = w;
        seed.residualBound = std::max(w.residualBound, opts.projectionTol);
        ExtensionRun run = extend_witness_run(cache, seed, targetOrder, policy);
        std::map<DerivVar, Rational> state;
        for (DerivVar v : stateVars) state.emplace(v, run.witness.values.at(v));
        for (size_t i = 0; i < s.paramNames.size(); ++i) {
            DerivVar p = DerivVar::param(static_cast<int>(i));
            state.emplace(p, *w.find(p));
        }
        return state;
    }

    Rational max_violation(const std::vector<ConstraintRecord>& rows) const {
        Rational best(0);
        for (const auto& c : rows)
            if (c.p <= sigma) best = std::max(best, rational_abs(c.residual));
        return best;
    }

    std::vector<ConstraintRecord> probe(const std::map<DerivVar, Rational>& state) const {
        return probe_constraints(cache, state, stateVars, probeLevel, policy, opts.projectionTol);
    }

    // Newton projection onto the level-sigma constraints; at most 10
    // iterations, step halving on stall.
    void project(std::map<DerivVar, Rational>& state, long step) const {
        auto rows = probe(state);
        Rational cur = max_violation(rows);
        for (int iter = 0; iter < 10; ++iter) {
            if (cur <= opts.projectionTol) return;
            RatMatrix A;
            std::vector<Rational> b;
            for (const auto& c : rows) {
                if (c.p > sigma) continue;
                A.push_back(c.gradient);
                b.push_back(Rational(-c.residual));
            }
            auto delta = solve_particular(std::move(A), std::move(b));
            if (!delta) throw ProjectionFailed(step);
            bool improved = false;
            Rational scale(1);
            for (int halving = 0; halving < 6 && !improved; ++halving) {
                std::map<DerivVar, Rational> cand = state;
                for (size_t d = 0; d < stateVars.size(); ++d)
                    cand[stateVars[d]] =
                        round_to_dyadic(cand[stateVars[d]] + (*delta)[d] * scale, kStateQuantBits);
                auto candRows = probe(cand);
                Rational candViol = max_violation(candRows);
                if (candViol < cur || candViol <= opts.projectionTol) {
                    state = std::move(cand);
                    rows = std::move(candRows);
                    cur = std::move(candViol);
                    improved = true;
                } else {
                    scale /= 2;
                }
            }
            if (!improved) throw ProjectionFailed(step);
        }
        if (cur > opts.projectionTol) throw ProjectionFailed(step);
    }

    ExtensionRun extend_at(const std::map<DerivVar, Rational>& state) const {
        Witness w;
        w.residualBound = opts.projectionTol;
        for (const auto& [v, val] : state) w.values.emplace(v, val);
        w.maxOrder = s.e() - 1;
        return extend_witness_run(cache, w, targetOrder, policy);
    }

    // Truncated Taylor advance of every state coordinate.
    std::map<DerivVar, Rational> advance(const ExtensionRun& run,
                                         const std::map<DerivVar, Rational>& state) const {
        std::map<DerivVar, Rational> next;
        for (const auto& [v, val] : state)
            if (v.isParam) next.emplace(v, val);
        for (DerivVar v : stateVars) {
            Rational sum(0);
            Rational hpow(1);
            Rational factorial(1);
            for (int l = v.order; l <= opts.jetDepth; ++l) {
                if (l > v.order) {
                    hpow *= opts.h;
                    factorial *= (l - v.order);
                }
                sum += run.witness.values.at(DerivVar::unknown(v.index, l)) * hpow / factorial;
            }
            next[v] = round_to_dyadic(sum, kStateQuantBits);
        }
        return next;
    }
};

void record_sample(Trajectory& traj, const DAESystem& s, const Rational& t,
                   const ExtensionRun& run, int sigma) {
    traj.times.push_back(t);
    std::vector<Rational> sample;
    sample.reserve(static_cast<size_t>(traj.stateOrders + 1) * s.n);
    for (int o = 0; o <= traj.stateOrders; ++o)
        for (int j = 0; j < s.n; ++j)
            sample.push_back(run.witness.values.at(DerivVar::unknown(j, o)));
    traj.states.push_back(std::move(sample));
    traj.residuals.push_back(run.max_abs_residual(sigma));
}

Trajectory simulate_impl(ProlongationCache& cache, const Witness& w, const SimulateOptions& opts,
                         const Rational& perturbation) {
    Stepper st(cache, w, opts);
    const DAESystem& s = cache.system();

    Trajectory traj;
    traj.n = s.n;
    traj.stateOrders = std::max(1, s.e() - 1);

    auto state = st.initial_state(w);
    if (perturbation != 0)
        for (DerivVar v : st.stateVars) state[v] += perturbation;

    Rational t(0);
    for (long step = 0; step <= opts.steps; ++step) {
        st.project(state, step);
        ExtensionRun run = st.extend_at(state);
        record_sample(traj, s, t, run, st.sigma);
        if (step == opts.steps) break;
        state = st.advance(run, state);
        t += opts.h;
    }
    return traj;
}

} // namespace

TaylorJet taylor_jet(ProlongationCache& cache, const Witness& w, int q,
                     const ExtendPolicy& policy) {
    const DAESystem& s = cache.system();
    if (s.n != s.r()) throw BadIndices("taylor_jet requires a square system (n = r)");
    if (q < 0) throw BadIndices("jet depth must be nonnegative");
    int e = s.e();
    TaylorJet jet;
    jet.extended = extend_witness(cache, w, std::max(q, e), policy);
    if (!check_quasiregularity(cache, 1, jet.extended))
        throw RankDeficient("system is not quasi-regular at the given point (k = 1)");
    jet.coeffs.assign(s.n, {});
    for (int j = 0; j < s.n; ++j) {
        Rational factorial(1);
        for (int l = 0; l <= q; ++l) {
            if (l > 0) factorial *= l;
            jet.coeffs[j].push_back(jet.extended.values.at(DerivVar::unknown(j, l)) / factorial);
        }
    }
    return jet;
}

Trajectory simulate(ProlongationCache& cache, const Witness& w, const SimulateOptions& opts) {
    return simulate_impl(cache, w, opts, Rational(0));
}

UniquenessReport local_uniqueness_probe(ProlongationCache& cache, const Witness& w,
                                        const Rational& delta, const SimulateOptions& opts) {
    UniquenessReport rep;
    rep.base = simulate_impl(cache, w, opts, Rational(0));
    rep.perturbed = simulate_impl(cache, w, opts, delta);
    size_t samples = std::min(rep.base.states.size(), rep.perturbed.states.size());
    for (size_t t = 0; t < samples; ++t) {
        Rational worst(0);
        for (size_t c = 0; c < rep.base.states[t].size(); ++c)
            worst = std::max(worst,
                             rational_abs(rep.base.states[t][c] - rep.perturbed.states[t][c]));
        rep.divergence.push_back(worst);
        rep.maxDivergence = std::max(rep.maxDivergence, worst);
    }
    if (!rep.divergence.empty()) rep.finalDivergence = rep.divergence.back();
    return rep;
}

} // namespace daestruct
