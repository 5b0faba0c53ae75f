#pragma once

#include "daestruct/rational.hpp"
#include "daestruct/system.hpp"

#include <vector>

namespace daestruct {

// Matrix over {NEG_INF} u N0. NEG_INF entries are forbidden assignment edges.
struct ExtMatrix {
    std::vector<std::vector<long>> a;

    ExtMatrix() = default;
    explicit ExtMatrix(std::vector<std::vector<long>> rows) : a(std::move(rows)) {}
    ExtMatrix(std::initializer_list<std::initializer_list<long>> rows) {
        for (const auto& row : rows) a.emplace_back(row);
    }
    ExtMatrix(size_t s, size_t m, long fill) : a(s, std::vector<long>(m, fill)) {}

    size_t rows() const { return a.size(); }
    size_t cols() const { return a.empty() ? 0 : a[0].size(); }
    long& at(size_t i, size_t j) { return a[i][j]; }
    long at(size_t i, size_t j) const { return a[i][j]; }
    bool all_finite() const;
    long max_entry() const; // NEG_INF when empty or all entries are NEG_INF
    ExtMatrix transposed() const;
};

// Nonnegative integer row/column potentials with lambda_i + phi_j >= a_ij and
// total equal to the Jacobi number.
struct DualCover {
    std::vector<long> lambda;
    std::vector<long> phi;
    long total() const;
    bool covers(const ExtMatrix& A) const;
};

/// Max over injections tau of sum a_{i,tau(i)}; NEG_INF when no injection
/// avoids the forbidden entries. Matrices with more rows than columns are
/// transpose-normalized first.
long jacobi_number(const ExtMatrix& A);

/// Exhaustive enumeration over all injections. Throws TooLarge when the
/// enumeration would exceed ~5e6 branches.
long jacobi_bruteforce(const ExtMatrix& A);

/// Optimal dual cover (Koenig-Egervary). Requires all entries finite.
DualCover koenig_dual(const ExtMatrix& A);

/// Entrywise nonzero indicator.
ExtMatrix binary_matrix(const std::vector<std::vector<Rational>>& M);

/// The ks x km 0/1 block matrix T_k(A) with blocks T_{k,a_ij}; requires
/// k >= max entry and all entries finite.
ExtMatrix triangular_expand(const ExtMatrix& A, long k);

struct JacobiBounds {
    long J_E;           // may be NEG_INF
    long J_E0;
    long indexBoundRHS; // J_E0 + e - min eps0
    long orderBound;    // J_E
};

JacobiBounds jacobi_bounds(const DAESystem& s);

} // namespace daestruct
