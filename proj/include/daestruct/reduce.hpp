#pragma once

#include "daestruct/rank.hpp"

namespace daestruct {

struct TaylorJet {
    std::vector<std::vector<Rational>> coeffs; // [var][l] = X_var^{(l)} / l!, l = 0..q
    Witness extended;
};

/// Degree-q Taylor coefficients at a consistent point of a square (n = r)
/// system. Extends the witness to order e-1+q and checks the k=1
/// quasi-regularity condition at it.
TaylorJet taylor_jet(ProlongationCache& cache, const Witness& w, int q,
                     const ExtendPolicy& policy = {});

struct Trajectory {
    int n = 0;
    int stateOrders = 1; // orders recorded per variable: 0..stateOrders
    std::vector<Rational> times;
    // sample -> values indexed [order * n + var]
    std::vector<std::vector<Rational>> states;
    std::vector<Rational> residuals; // max |f_i^{(p)}|, p <= sigma, per sample
};

struct SimulateOptions {
    Rational h = Rational(1) / 1000;
    long steps = 1000;
    int jetDepth = 4;
    Rational projectionTol = pow10_inv(10);
    uint64_t seed = 0;
    int sigmaOverride = -1; // computed from the witness oracle when < 0
};

/// Taylor-jet stepping with Newton projection back onto the level-sigma
/// prolongation constraints after every step. Requires n = r.
Trajectory simulate(ProlongationCache& cache, const Witness& w, const SimulateOptions& opts);

struct UniquenessReport {
    Trajectory base;
    Trajectory perturbed;
    std::vector<Rational> divergence; // per sample, max-abs state difference
    Rational maxDivergence{0};
    Rational finalDivergence{0};
};

/// Re-simulates with every pre-projection state coordinate offset by delta and
/// reports trajectory divergence. On a constraint manifold of dimension zero
/// the projection removes the whole perturbation; free directions persist.
UniquenessReport local_uniqueness_probe(ProlongationCache& cache, const Witness& w,
                                        const Rational& delta, const SimulateOptions& opts);

} // namespace daestruct
