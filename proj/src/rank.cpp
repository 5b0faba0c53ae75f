#include "daestruct/rank.hpp"

#include "daestruct/errors.hpp"

#include <algorithm>
#include <random>

namespace daestruct {

namespace {

// Clears denominators row by row; row scaling by a positive integer does not
// change the rank.
std::vector<std::vector<Integer>> to_integer_rows(const RatMatrix& M) {
    std::vector<std::vector<Integer>> out;
    out.reserve(M.size());
    for (const auto& row : M) {
        Integer lcm(1);
        for (const auto& q : row) {
            Integer den = q.get_den();
            Integer g;
            mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
            lcm = lcm / g * den;
        }
        std::vector<Integer> irow;
        irow.reserve(row.size());
        for (const auto& q : row) irow.push_back(Integer(q.get_num() * (lcm / q.get_den())));
        out.push_back(std::move(irow));
    }
    return out;
}

Rational random_rational_31(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-(1L << 31) + 1, (1L << 31) - 1);
    std::uniform_int_distribution<long> den(1, (1L << 31) - 1);
    return make_rational(num(rng), den(rng));
}

// Jacobian of F^{[k-1]} with respect to X^{[k-1+e]}, evaluated through `lookup`.
RatMatrix full_jacobian_at(ProlongationCache& cache, int k,
                           const std::function<const Rational*(DerivVar)>& lookup) {
    const DAESystem& s = cache.system();
    int e = s.e();
    int maxOrd = k - 1 + e;
    RatMatrix M;
    M.reserve(static_cast<size_t>(k) * s.r());
    for (int p = 0; p < k; ++p) {
        for (int j = 0; j < s.r(); ++j) {
            const DiffPoly& f = cache.row(j, p);
            std::vector<Rational> row;
            row.reserve(static_cast<size_t>(s.n) * (maxOrd + 1));
            for (int var = 0; var < s.n; ++var)
                for (int m = 0; m <= maxOrd; ++m) {
                    DiffPoly d = f.partial(DerivVar::unknown(var, m));
                    row.push_back(d.is_zero() ? Rational(0) : d.evaluate(lookup));
                }
            M.push_back(std::move(row));
        }
    }
    return M;
}

std::function<const Rational*(DerivVar)> witness_lookup(const Witness& w) {
    return [&w](DerivVar v) { return w.find(v); };
}

} // namespace

int rank_exact(const RatMatrix& M) {
    if (M.empty() || M[0].empty()) return 0;
    auto A = to_integer_rows(M);
    const size_t rows = A.size(), cols = A[0].size();
    size_t rank = 0;
    Integer prev(1);
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        // smallest-magnitude nonzero pivot keeps the Bareiss minors small
        size_t best = rows;
        for (size_t i = rank; i < rows; ++i) {
            if (A[i][col] == 0) continue;
            if (best == rows || mpz_cmpabs(A[i][col].get_mpz_t(), A[best][col].get_mpz_t()) < 0)
                best = i;
        }
        if (best == rows) continue;
        std::swap(A[rank], A[best]);
        const Integer& piv = A[rank][col];
        for (size_t i = rank + 1; i < rows; ++i) {
            for (size_t j = col + 1; j < cols; ++j) {
                Integer t = A[i][j] * piv - A[i][col] * A[rank][j];
                mpz_divexact(A[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            A[i][col] = 0;
        }
        prev = piv;
        ++rank;
    }
    return static_cast<int>(rank);
}

int rank_exact_guarded(RatMatrix M, const Rational& minPivotAbs) {
    if (M.empty() || M[0].empty()) return 0;
    const size_t rows = M.size(), cols = M[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t best = rows;
        Rational bestAbs(0);
        for (size_t i = rank; i < rows; ++i) {
            Rational a = rational_abs(M[i][col]);
            if (a > bestAbs) {
                bestAbs = a;
                best = i;
            }
        }
        if (best == rows) continue; // exact zero column: unambiguous
        if (bestAbs <= minPivotAbs)
            throw InconsistentWitness("rank pivot " + rational_to_string(bestAbs) +
                                      " is within the residual guard band");
        std::swap(M[rank], M[best]);
        for (size_t i = rank + 1; i < rows; ++i) {
            if (M[i][col] == 0) continue;
            Rational factor = M[i][col] / M[rank][col];
            for (size_t j = col; j < cols; ++j) M[i][j] -= factor * M[rank][j];
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

std::optional<std::vector<Rational>> solve_particular(RatMatrix A, std::vector<Rational> b) {
    const size_t rows = A.size();
    const size_t cols = rows == 0 ? 0 : A[0].size();
    std::vector<size_t> pivotCol;
    std::vector<bool> colUsed(cols, false);
    size_t rank = 0;
    // Full pivoting: the free (zeroed) coordinates must be the weakly coupled
    // ones, otherwise a particular solution of a tiny right-hand side can be
    // huge along an ill-conditioned direction.
    while (rank < rows) {
        size_t bestRow = rows, bestCol = cols;
        Rational bestAbs(0);
        for (size_t i = rank; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) {
                if (colUsed[j]) continue;
                Rational a = rational_abs(A[i][j]);
                if (a > bestAbs) {
                    bestAbs = a;
                    bestRow = i;
                    bestCol = j;
                }
            }
        if (bestRow == rows) break;
        std::swap(A[rank], A[bestRow]);
        std::swap(b[rank], b[bestRow]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || A[i][bestCol] == 0) continue;
            Rational factor = A[i][bestCol] / A[rank][bestCol];
            for (size_t j = 0; j < cols; ++j) {
                if (colUsed[j]) continue;
                A[i][j] -= factor * A[rank][j];
            }
            b[i] -= factor * b[rank];
        }
        colUsed[bestCol] = true;
        pivotCol.push_back(bestCol);
        ++rank;
    }
    for (size_t i = rank; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<Rational> x(cols, Rational(0));
    for (size_t t = 0; t < rank; ++t) x[pivotCol[t]] = b[t] / A[t][pivotCol[t]];
    return x;
}

int rank_at(const PseudoJacobian& J, const Witness& w) {
    RatMatrix M = J.evaluate(witness_lookup(w));
    if (w.residualBound > 0) return rank_exact_guarded(std::move(M), w.residualBound * 1000000);
    return rank_exact(M);
}

int rank_generic(const PseudoJacobian& J, uint64_t seed, int trials) {
    if (trials < 1) throw BadIndices("rank_generic needs trials >= 1");
    std::vector<DerivVar> vars = J.variables();
    std::mt19937_64 rng(seed);
    int best = 0;
    for (int t = 0; t < trials; ++t) {
        std::map<DerivVar, Rational> point;
        for (DerivVar v : vars) point.emplace(v, random_rational_31(rng));
        RatMatrix M = J.evaluate([&](DerivVar v) -> const Rational* {
            auto it = point.find(v);
            return it == point.end() ? nullptr : &it->second;
        });
        best = std::max(best, rank_exact(M));
    }
    return best;
}

bool check_quasiregularity(ProlongationCache& cache, int k, const Witness& w) {
    if (k < 1) throw BadIndices("check_quasiregularity needs k >= 1");
    RatMatrix M = full_jacobian_at(cache, k, witness_lookup(w));
    int rank = w.residualBound > 0 ? rank_exact_guarded(std::move(M), w.residualBound * 1000000)
                                   : rank_exact(M);
    return rank == k * cache.system().r();
}

bool check_quasiregularity_generic(ProlongationCache& cache, int k, uint64_t seed, int trials) {
    if (k < 1) throw BadIndices("check_quasiregularity needs k >= 1");
    const DAESystem& s = cache.system();
    // collect the variables of all rows once
    std::vector<DerivVar> vars;
    for (int p = 0; p < k; ++p)
        for (int j = 0; j < s.r(); ++j)
            for (DerivVar v : cache.row(j, p).variables()) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        std::map<DerivVar, Rational> point;
        for (DerivVar v : vars) point.emplace(v, random_rational_31(rng));
        RatMatrix M = full_jacobian_at(cache, k, [&](DerivVar v) -> const Rational* {
            auto it = point.find(v);
            return it == point.end() ? nullptr : &it->second;
        });
        if (rank_exact(M) == k * s.r()) return true;
    }
    return false;
}

HypothesisReport hypothesis_diagnostic(ProlongationCache& cache, int k, int i, const Witness& w,
                                       uint64_t seed, int trials) {
    PseudoJacobian J = PseudoJacobian::build(cache, k, i);
    HypothesisReport rep;
    rep.k = k;
    rep.i = i;
    rep.witnessRank = rank_at(J, w);
    rep.genericRank = rank_generic(J, seed, trials);
    rep.agree = rep.witnessRank == rep.genericRank;
    return rep;
}

RankOracle RankOracle::witness_oracle(Witness seed, ExtendPolicy policy) {
    RankOracle o;
    o.mode_ = Mode::WitnessPoint;
    o.seedWitness_ = std::move(seed);
    o.policy_ = std::move(policy);
    o.rngSeed_ = o.policy_.seed;
    return o;
}

RankOracle RankOracle::generic_oracle(uint64_t seed, int trials) {
    RankOracle o;
    o.mode_ = Mode::Generic;
    o.rngSeed_ = seed;
    o.trials_ = trials;
    return o;
}

const Witness& RankOracle::extended_witness(ProlongationCache& cache, int order) const {
    if (mode_ != Mode::WitnessPoint) throw Error("extended_witness on a generic oracle");
    if (cachedOrder_ < order) {
        // Always re-extend from the original seed so the policy RNG replays the
        // same draw sequence regardless of the request order.
        cached_ = extend_witness(cache, seedWitness_, order, policy_);
        cachedOrder_ = order;
    }
    return cached_;
}

int RankOracle::rank(ProlongationCache& cache, const PseudoJacobian& J) const {
    if (mode_ == Mode::Generic) return rank_generic(J, rngSeed_, trials_);
    int needed = 0;
    for (DerivVar v : J.variables())
        if (!v.isParam) needed = std::max(needed, static_cast<int>(v.order));
    return rank_at(J, extended_witness(cache, needed));
}

std::string RankOracle::describe() const {
    if (mode_ == Mode::WitnessPoint) return "witness";
    return "generic(trials=" + std::to_string(trials_) + ")";
}

} // namespace daestruct
