#include "daestruct/prolong.hpp"

#include "daestruct/errors.hpp"

namespace daestruct {

void ProlongationCache::ensure_level(int p) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (levels_.empty()) {
        levels_.push_back(std::make_shared<const std::vector<DiffPoly>>(sys_->equations));
    }
    while (static_cast<int>(levels_.size()) <= p) {
        const auto& prev = *levels_.back();
        std::vector<DiffPoly> next;
        next.reserve(prev.size());
        for (const auto& f : prev) next.push_back(f.total_derivative());
        levels_.push_back(std::make_shared<const std::vector<DiffPoly>>(std::move(next)));
    }
}

const DiffPoly& ProlongationCache::row(int eqIndex, int p) const {
    if (p < 0 || eqIndex < 0 || eqIndex >= sys_->r())
        throw BadIndices("prolongation row (" + std::to_string(eqIndex) + ", " + std::to_string(p) + ")");
    ensure_level(p);
    std::lock_guard<std::mutex> lock(mu_);
    return (*levels_[p])[eqIndex];
}

Prolongation prolong(ProlongationCache& cache, int k) {
    if (k < 0) throw BadIndices("prolong needs k >= 0");
    const DAESystem& s = cache.system();
    Prolongation out{&s, k, {}};
    out.rows.resize(k + 1);
    for (int p = 0; p <= k; ++p) {
        out.rows[p].reserve(s.r());
        for (int j = 0; j < s.r(); ++j) out.rows[p].push_back(cache.row(j, p));
    }
    return out;
}

Prolongation prolong(const DAESystem& s, int k) {
    ProlongationCache cache(s);
    return prolong(cache, k);
}

PseudoJacobian PseudoJacobian::build(ProlongationCache& cache, int k, int i) {
    const DAESystem& s = cache.system();
    int e = s.e();
    if (k < 1 || i < e - 1)
        throw BadIndices("pseudo_jacobian needs k >= 1 and i >= e-1 (k=" + std::to_string(k) +
                         ", i=" + std::to_string(i) + ", e=" + std::to_string(e) + ")");
    PseudoJacobian J;
    J.k_ = k;
    J.i_ = i;
    J.r_ = s.r();
    J.n_ = s.n;
    J.e_ = e;
    J.stored_.resize(k);
    for (int p = 1; p <= k; ++p) {
        J.stored_[p - 1].resize(p);
        int level = i - e + p;
        for (int q = 1; q <= p; ++q) {
            std::vector<DiffPoly>& block = J.stored_[p - 1][q - 1];
            block.resize(static_cast<size_t>(J.r_) * J.n_);
            for (int row = 0; row < J.r_; ++row) {
                const DiffPoly& f = cache.row(row, level);
                for (int col = 0; col < J.n_; ++col)
                    block[static_cast<size_t>(row) * J.n_ + col] =
                        f.partial(DerivVar::unknown(col, i + q));
            }
        }
    }
    return J;
}

PseudoJacobian::PseudoJacobian(const DAESystem& s, int k, int i) {
    ProlongationCache cache(s);
    *this = build(cache, k, i);
}

PseudoJacobian pseudo_jacobian(const DAESystem& s, int k, int i) {
    return PseudoJacobian(s, k, i);
}

const DiffPoly& PseudoJacobian::block_entry(int p, int q, int row, int col) const {
    static const DiffPoly zero;
    if (q > p) return zero;
    return stored_[p - 1][q - 1][static_cast<size_t>(row) * n_ + col];
}

const DiffPoly& PseudoJacobian::entry(size_t row, size_t col) const {
    int p = static_cast<int>(row / r_) + 1;
    int q = static_cast<int>(col / n_) + 1;
    return block_entry(p, q, static_cast<int>(row % r_), static_cast<int>(col % n_));
}

std::vector<DerivVar> PseudoJacobian::variables() const {
    std::vector<DerivVar> vars;
    for (const auto& blockRow : stored_)
        for (const auto& block : blockRow)
            for (const auto& poly : block)
                for (DerivVar v : poly.variables()) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

std::vector<std::vector<Rational>> PseudoJacobian::evaluate(
    const std::function<const Rational*(DerivVar)>& lookup) const {
    std::vector<std::vector<Rational>> M(rows(), std::vector<Rational>(cols(), Rational(0)));
    for (size_t row = 0; row < rows(); ++row)
        for (size_t col = 0; col < cols(); ++col) {
            const DiffPoly& p = entry(row, col);
            if (!p.is_zero()) M[row][col] = p.evaluate(lookup);
        }
    return M;
}

} // namespace daestruct
