#include "daestruct/jacobi.hpp"

#include "daestruct/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace daestruct {

bool ExtMatrix::all_finite() const {
    for (const auto& row : a)
        for (long v : row)
            if (v == NEG_INF) return false;
    return true;
}

long ExtMatrix::max_entry() const {
    long best = NEG_INF;
    for (const auto& row : a)
        for (long v : row)
            if (v != NEG_INF) best = std::max(best, v);
    return best;
}

ExtMatrix ExtMatrix::transposed() const {
    ExtMatrix t(cols(), rows(), 0);
    for (size_t i = 0; i < rows(); ++i)
        for (size_t j = 0; j < cols(); ++j) t.at(j, i) = at(i, j);
    return t;
}

long DualCover::total() const {
    return std::accumulate(lambda.begin(), lambda.end(), 0L) +
           std::accumulate(phi.begin(), phi.end(), 0L);
}

bool DualCover::covers(const ExtMatrix& A) const {
    if (lambda.size() != A.rows() || phi.size() != A.cols()) return false;
    for (long l : lambda)
        if (l < 0) return false;
    for (long p : phi)
        if (p < 0) return false;
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < A.cols(); ++j)
            if (A.at(i, j) != NEG_INF && lambda[i] + phi[j] < A.at(i, j)) return false;
    return true;
}

namespace {

// Kuhn's matching on allowed edges; returns the size of a maximum matching of
// rows into columns.
class BipartiteMatcher {
public:
    BipartiteMatcher(const ExtMatrix& A) : A_(A), matchCol_(A.cols(), -1) {}

    int run() {
        int matched = 0;
        for (size_t i = 0; i < A_.rows(); ++i) {
            seen_.assign(A_.cols(), false);
            if (tryRow(i)) ++matched;
        }
        return matched;
    }

private:
    bool tryRow(size_t i) {
        for (size_t j = 0; j < A_.cols(); ++j) {
            if (A_.at(i, j) == NEG_INF || seen_[j]) continue;
            seen_[j] = true;
            if (matchCol_[j] < 0 || tryRow(static_cast<size_t>(matchCol_[j]))) {
                matchCol_[j] = static_cast<int>(i);
                return true;
            }
        }
        return false;
    }

    const ExtMatrix& A_;
    std::vector<int> matchCol_;
    std::vector<bool> seen_;
};

// Maximum-weight perfect matching on a square int64 matrix (Kuhn-Munkres with
// potentials). Returns optimal value; exposes the final feasible potentials
// (u_i + v_j >= w_ij, tight on the matching).
struct Assignment {
    long value = 0;
    std::vector<long> u, v;
    std::vector<int> matchOfRow;
};

Assignment solve_square_max(const std::vector<std::vector<long>>& w) {
    const int n = static_cast<int>(w.size());
    // Internally run the classic min-cost JV algorithm on cost = -w with
    // 1-based arrays; duals transform back as u = -uMin, v = -vMin.
    std::vector<std::vector<long>> cost(n + 1, std::vector<long>(n + 1, 0));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) cost[i][j] = -w[i - 1][j - 1];

    const long INF = std::numeric_limits<long>::max() / 4;
    std::vector<long> uMin(n + 1, 0), vMin(n + 1, 0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<long> minv(n + 1, INF);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = -1;
            long delta = INF;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                long cur = cost[i0][j] - uMin[i0] - vMin[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    uMin[p[j]] += delta;
                    vMin[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }

    Assignment out;
    out.matchOfRow.assign(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) out.matchOfRow[p[j] - 1] = j - 1;
    out.u.resize(n);
    out.v.resize(n);
    for (int i = 1; i <= n; ++i) out.u[i - 1] = -uMin[i];
    for (int j = 1; j <= n; ++j) out.v[j - 1] = -vMin[j];
    out.value = 0;
    for (int i = 0; i < n; ++i) out.value += w[i][out.matchOfRow[i]];
    return out;
}

// Pads to square with zero-weight dummy rows and maps NEG_INF to a weight low
// enough that forbidden edges never enter an optimum when a feasible injection
// exists.
Assignment solve_padded(const ExtMatrix& A) {
    const size_t s = A.rows(), m = A.cols();
    long maxE = std::max(0L, A.max_entry());
    const long FORBIDDEN = -(maxE + 1) * static_cast<long>(m + 1);
    std::vector<std::vector<long>> w(m, std::vector<long>(m, 0));
    for (size_t i = 0; i < s; ++i)
        for (size_t j = 0; j < m; ++j)
            w[i][j] = A.at(i, j) == NEG_INF ? FORBIDDEN : A.at(i, j);
    return solve_square_max(w);
}

} // namespace

long jacobi_number(const ExtMatrix& A) {
    if (A.rows() == 0 || A.cols() == 0) return A.rows() == 0 ? 0 : NEG_INF;
    if (A.rows() > A.cols()) return jacobi_number(A.transposed());
    BipartiteMatcher feas(A);
    if (feas.run() < static_cast<int>(A.rows())) return NEG_INF;
    return solve_padded(A).value;
}

long jacobi_bruteforce(const ExtMatrix& A) {
    if (A.rows() == 0 || A.cols() == 0) return A.rows() == 0 ? 0 : NEG_INF;
    if (A.rows() > A.cols()) return jacobi_bruteforce(A.transposed());
    const ExtMatrix& M = A;
    const size_t s = M.rows(), m = M.cols();
    double branches = 1;
    for (size_t i = 0; i < s; ++i) branches *= static_cast<double>(m - i);
    if (branches > 5e6)
        throw TooLarge("injection enumeration over " + std::to_string(s) + "x" + std::to_string(m));

    long best = NEG_INF;
    std::vector<bool> used(m, false);
    // depth-first over rows
    std::function<void(size_t, long)> rec = [&](size_t i, long acc) {
        if (i == s) {
            best = std::max(best, acc);
            return;
        }
        for (size_t j = 0; j < m; ++j) {
            if (used[j] || M.at(i, j) == NEG_INF) continue;
            used[j] = true;
            rec(i + 1, acc + M.at(i, j));
            used[j] = false;
        }
    };
    rec(0, 0);
    return best;
}

DualCover koenig_dual(const ExtMatrix& A) {
    if (!A.all_finite()) throw InfiniteEntry();
    if (A.rows() > A.cols())
        throw BadIndices("koenig_dual expects s <= m; transpose-normalize first");
    Assignment sol = solve_padded(A);
    // Normalize to nonnegative potentials. On square matrices the global shift
    // u += d, v -= d keeps feasibility and the total; when min(u) = -d < 0
    // every v_j >= d, so the shift lands both sides in N0.
    long d = 0;
    for (long ui : sol.u) d = std::min(d, ui);
    d = -d;
    DualCover cover;
    cover.lambda.reserve(A.rows());
    for (size_t i = 0; i < A.rows(); ++i) cover.lambda.push_back(sol.u[i] + d);
    cover.phi.reserve(A.cols());
    for (size_t j = 0; j < A.cols(); ++j) cover.phi.push_back(sol.v[j] - d);
    // Dummy-row potentials must vanish after the shift, otherwise the
    // restricted cover would beat the primal optimum.
    for (size_t i = A.rows(); i < A.cols(); ++i)
        if (sol.u[i] + d != 0) throw Error("internal: dual cover normalization failed");
    if (!cover.covers(A) || cover.total() != sol.value)
        throw Error("internal: dual cover construction failed");
    return cover;
}

ExtMatrix binary_matrix(const std::vector<std::vector<Rational>>& M) {
    ExtMatrix B(M.size(), M.empty() ? 0 : M[0].size(), 0);
    for (size_t i = 0; i < M.size(); ++i)
        for (size_t j = 0; j < M[i].size(); ++j) B.at(i, j) = M[i][j] != 0 ? 1 : 0;
    return B;
}

ExtMatrix triangular_expand(const ExtMatrix& A, long k) {
    if (!A.all_finite()) throw InfiniteEntry();
    long maxE = std::max(0L, A.max_entry());
    if (k < maxE) throw KTooSmall(k, maxE);
    const size_t s = A.rows(), m = A.cols();
    ExtMatrix T(s * k, m * k, 0);
    for (size_t i = 0; i < s; ++i) {
        for (size_t j = 0; j < m; ++j) {
            long aij = A.at(i, j);
            // (T_{k,a})_{hl} = 1 iff k-a <= h-l <= k-1 (1-based block indices)
            for (long h = 1; h <= k; ++h)
                for (long l = 1; l <= k; ++l)
                    if (k - aij <= h - l && h - l <= k - 1)
                        T.at(i * k + h - 1, j * k + l - 1) = 1;
        }
    }
    return T;
}

JacobiBounds jacobi_bounds(const DAESystem& s) {
    OrderMatrix om = order_matrix(s);
    JacobiBounds b;
    b.J_E = jacobi_number(ExtMatrix(om.E));
    b.J_E0 = jacobi_number(ExtMatrix(om.E0));
    b.indexBoundRHS = b.J_E0 + om.e - om.minE0;
    b.orderBound = b.J_E;
    return b;
}

} // namespace daestruct
