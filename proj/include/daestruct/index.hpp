#pragma once

#include "daestruct/jacobi.hpp"
#include "daestruct/rank.hpp"

#include <optional>
#include <string>
#include <vector>

namespace daestruct {

struct MuSequence {
    std::vector<long> values; // mu_0 .. mu_K (mu_0 = 0)
    int i = 0;                // row index used
    std::string oracle;
};

struct HKData {
    long linearCoeff = 0;     // n - r
    long constantTerm = 0;    // ord(P)
    long regularityBound = 0; // e - 1
};

/// mu_{k,i} = k*r - rank(J_{k,i}); 0 when k = 0.
long mu_value(ProlongationCache& cache, int k, int i, const RankOracle& oracle);

struct IndexResult {
    int sigma = 0;
    MuSequence mu;
    int kMax = 0;
};

/// Computes mu_1, mu_2, ... at i = e-1 until two consecutive values agree.
/// The iteration cap is (e - min eps0) + J(E0) + 1; hitting it raises
/// NotStabilized. maxKOverride > 0 replaces the cap.
IndexResult differentiation_index(ProlongationCache& cache, const RankOracle& oracle,
                                  int maxKOverride = 0);

/// ord(P) = e*r - mu_sigma; throws NegativeOrder when the oracle ranks are
/// inconsistent.
long order_of_ideal(const DAESystem& s, int sigma, long muSigma);

HKData hk_data(const DAESystem& s, long ord);

/// trdeg of Frac(B_i / (Delta_{i-e+1+k} cap B_i)) over K: (n-r)(i+1) + e*r - mu.
long trdeg_report(const DAESystem& s, int i, int k, long mu);

// ---------------------------------------------------------------------------
// Full analysis pipeline (what `analyze` prints).

struct AnalyzeOptions {
    std::optional<Witness> witness; // witness oracle when present, else generic
    uint64_t seed = 0;
    int trials = 3;
    int maxK = 0; // 0 = use the Jacobi-bound cap
    ExtendPolicy policy() const {
        ExtendPolicy p;
        p.seed = seed;
        return p;
    }
};

struct IndexReport {
    int n = 0, r = 0, e = 0;
    long minE0 = 0;
    OrderMatrix orders;
    JacobiBounds bounds;
    DualCover dualE0;

    MuSequence mu;
    int sigma = 0;
    long order = 0;
    HKData hk;
    std::vector<long> trdeg; // per k = 0..sigma+1 at i = e-1

    // checks
    bool iIndependence = false;
    std::vector<std::vector<long>> muByI; // rows for i = e-1, e, e+1
    bool indexBoundHolds = false;         // sigma + ord <= J(E0) + e - min
    bool orderBoundHolds = false;         // ord <= J(E)
    bool muSandwichHolds = false;         // er - J(E0) <= mu_k <= er - ord for k >= e - min
    std::vector<HypothesisReport> hypothesis; // witness mode only
    bool hypothesisAgree = true;
    std::vector<bool> quasiRegular; // k = 1..sigma+1
    bool quasiRegularAll = false;

    std::string oracleDescription;
    uint64_t seed = 0;
    int trials = 3;
    std::map<DerivVar, Rational> basePoint; // witness values up to order e (witness mode)
};

IndexReport analyze(const DAESystem& s, const AnalyzeOptions& opts);

} // namespace daestruct
