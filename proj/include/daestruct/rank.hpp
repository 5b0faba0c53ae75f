#pragma once

#include "daestruct/prolong.hpp"
#include "daestruct/witness.hpp"

#include <optional>

namespace daestruct {

using RatMatrix = std::vector<std::vector<Rational>>;

/// Exact rank via fraction-free (Bareiss) elimination over cleared-denominator
/// integers, picking the smallest-magnitude admissible pivot.
int rank_exact(const RatMatrix& M);

/// Rank for residual-bounded data: plain rational elimination that refuses to
/// classify when the best available pivot is within `minPivotAbs` of zero
/// (throws InconsistentWitness).
int rank_exact_guarded(RatMatrix M, const Rational& minPivotAbs);

/// Particular solution of A x = b with free variables set to 0; nullopt when
/// inconsistent.
std::optional<std::vector<Rational>> solve_particular(RatMatrix A, std::vector<Rational> b);

/// Rank of the pseudo-Jacobian evaluated exactly at a witness point. The
/// witness must cover every variable in the entries and satisfy the
/// prolongation rows to the needed level (extend_witness establishes and
/// checks both). With residualBound > 0 the guarded elimination is used
/// (pivots must exceed 1e6 * residualBound).
int rank_at(const PseudoJacobian& J, const Witness& w);

/// Schwartz-Zippel style rank over the free fraction field: max exact rank over
/// `trials` uniformly random rational points (num/den below 2^31).
int rank_generic(const PseudoJacobian& J, uint64_t seed, int trials);

/// Necessary quasi-regularity condition at w: the Jacobian of F^{[k-1]} with
/// respect to all of X^{[k-1+e]} has full row rank k*r. The witness must cover
/// orders up to k-1+e.
bool check_quasiregularity(ProlongationCache& cache, int k, const Witness& w);

/// Same condition evaluated at random points instead of a witness.
bool check_quasiregularity_generic(ProlongationCache& cache, int k, uint64_t seed, int trials);

struct HypothesisReport {
    int k = 0, i = 0;
    int witnessRank = 0;
    int genericRank = 0;
    bool agree = false;
};

/// Compares the witness-point rank with the generic-evaluation rank of
/// J_{k,i}; disagreement warns that results depend on the oracle choice.
HypothesisReport hypothesis_diagnostic(ProlongationCache& cache, int k, int i, const Witness& w,
                                       uint64_t seed, int trials = 3);

// Rank oracle for the mu sequence: witness mode is authoritative, generic mode
// is the fast pre-check. Deterministic given (mode, seed).
class RankOracle {
public:
    enum class Mode { WitnessPoint, Generic };

    static RankOracle witness_oracle(Witness seed, ExtendPolicy policy = {});
    static RankOracle generic_oracle(uint64_t seed, int trials = 3);

    int rank(ProlongationCache& cache, const PseudoJacobian& J) const;
    Mode mode() const { return mode_; }
    uint64_t seed() const { return rngSeed_; }
    int trials() const { return trials_; }
    std::string describe() const;

    /// Witness extended (and cached) to cover derivative order `order`.
    /// Witness mode only.
    const Witness& extended_witness(ProlongationCache& cache, int order) const;

private:
    RankOracle() = default;

    Mode mode_ = Mode::Generic;
    Witness seedWitness_;
    ExtendPolicy policy_;
    uint64_t rngSeed_ = 0;
    int trials_ = 3;
    mutable Witness cached_;
    mutable int cachedOrder_ = -1;
};

} // namespace daestruct
