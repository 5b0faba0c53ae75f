#include "daestruct/system.hpp"

#include "daestruct/errors.hpp"

#include <algorithm>

namespace daestruct {

int DAESystem::e() const {
    long best = 0;
    for (const auto& f : equations) best = std::max(best, std::max(0L, f.order()));
    return static_cast<int>(best);
}

int DAESystem::equation_order(int i) const {
    long o = equations.at(i).order();
    return o == NEG_INF ? 0 : static_cast<int>(o);
}

void DAESystem::validate() const {
    int rr = r();
    if (rr < 1) throw Error("system has no equations");
    if (rr > n) throw Error("system has r > n (" + std::to_string(rr) + " equations, " +
                            std::to_string(n) + " unknowns)");
    for (int i = 0; i < rr; ++i) {
        if (equations[i].is_zero())
            throw Error("equation " + std::to_string(i + 1) + " is identically zero");
        for (DerivVar v : equations[i].variables()) {
            if (v.isParam) {
                if (v.index < 0 || v.index >= static_cast<int>(paramNames.size()))
                    throw Error("parameter index out of range in equation " + std::to_string(i + 1));
            } else if (v.index < 0 || v.index >= n) {
                throw Error("unknown index out of range in equation " + std::to_string(i + 1));
            }
        }
    }
    if (e() < 1) throw Error("system involves no derivatives (e = 0)");
}

std::string DAESystem::unknown_name(int index) const {
    if (index >= 0 && index < static_cast<int>(unknownNames.size())) return unknownNames[index];
    return "x" + std::to_string(index + 1);
}

std::string DAESystem::param_name(int index) const {
    if (index >= 0 && index < static_cast<int>(paramNames.size())) return paramNames[index];
    return "p" + std::to_string(index + 1);
}

std::string DAESystem::var_name(DerivVar v) const {
    if (v.isParam) return param_name(v.index);
    return deriv_var_name(unknown_name(v.index), v.order);
}

OrderMatrix order_matrix(const DAESystem& s) {
    OrderMatrix m;
    int r = s.r();
    m.E.assign(r, std::vector<long>(s.n, NEG_INF));
    m.E0.assign(r, std::vector<long>(s.n, 0));
    m.e = 0;
    m.minE0 = std::numeric_limits<long>::max();
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < s.n; ++j) {
            long o = s.equations[i].order_in_var(j);
            m.E[i][j] = o;
            m.E0[i][j] = (o == NEG_INF) ? 0 : o;
            m.e = std::max(m.e, m.E0[i][j]);
            m.minE0 = std::min(m.minE0, m.E0[i][j]);
        }
    }
    return m;
}

} // namespace daestruct
