#pragma once

#include "daestruct/system.hpp"

#include <memory>
#include <mutex>
#include <vector>

namespace daestruct {

// Memoizes total derivatives of the defining equations; repeated derivative of
// f_j is the dominant symbolic cost, so every analysis over one system shares
// a cache. Safe for concurrent readers.
class ProlongationCache {
public:
    explicit ProlongationCache(const DAESystem& s) : sys_(&s) {}

    /// f_j^{(p)} (j 0-based).
    const DiffPoly& row(int eqIndex, int p) const;
    const DAESystem& system() const { return *sys_; }

private:
    void ensure_level(int p) const;

    const DAESystem* sys_;
    mutable std::mutex mu_;
    // levels_[p][j] = f_j^{(p)}; deque-like growth, never shrinks
    mutable std::vector<std::shared_ptr<const std::vector<DiffPoly>>> levels_;
};

// F^{(0)},...,F^{(k)} grouped by level.
struct Prolongation {
    const DAESystem* base;
    int k;
    std::vector<std::vector<DiffPoly>> rows; // rows[p][j] = f_j^{(p)}
};

Prolongation prolong(const DAESystem& s, int k);
Prolongation prolong(ProlongationCache& cache, int k);

// The kr x kn block matrix of Definition-style partials: block (p,q), for
// 1 <= p,q <= k, is the r x n Jacobian of F^{(i-e+p)} with respect to
// X^{(i+q)}. Blocks with q > p vanish identically; only q <= p is stored.
class PseudoJacobian {
public:
    PseudoJacobian(const DAESystem& s, int k, int i);

    int k() const { return k_; }
    int i() const { return i_; }
    int block_rows() const { return r_; }
    int block_cols() const { return n_; }
    size_t rows() const { return static_cast<size_t>(k_) * r_; }
    size_t cols() const { return static_cast<size_t>(k_) * n_; }

    /// Entry by global position; zero polynomial above the block diagonal.
    const DiffPoly& entry(size_t row, size_t col) const;
    /// Entry inside block (p,q), 1-based block indices.
    const DiffPoly& block_entry(int p, int q, int row, int col) const;

    /// All distinct variables occurring across entries (sorted).
    std::vector<DerivVar> variables() const;

    /// Exact numeric matrix at an assignment.
    std::vector<std::vector<Rational>> evaluate(
        const std::function<const Rational*(DerivVar)>& lookup) const;

    static PseudoJacobian build(ProlongationCache& cache, int k, int i);

private:
    PseudoJacobian() = default;

    int k_ = 0, i_ = 0, r_ = 0, n_ = 0, e_ = 0;
    // stored[p-1][q-1] for q <= p, each an r*n row-major poly matrix
    std::vector<std::vector<std::vector<DiffPoly>>> stored_;
};

PseudoJacobian pseudo_jacobian(const DAESystem& s, int k, int i);

} // namespace daestruct
