#pragma once

#include "daestruct/diffpoly.hpp"

#include <string>
#include <vector>

namespace daestruct {

// The DAE system f_1 = ... = f_r = 0 in n differential unknowns, stored
// exactly as given (no scaling, no reordering).
struct DAESystem {
    std::vector<DiffPoly> equations;   // f_1..f_r
    int n = 0;                         // number of differential unknowns
    std::vector<std::string> unknownNames;
    std::vector<std::string> paramNames;

    int r() const { return static_cast<int>(equations.size()); }
    /// e = max eps_ij >= 1.
    int e() const;
    /// Max derivation order of f_i (0 for order-free equations).
    int equation_order(int i) const;

    /// Checks 1 <= r <= n, nonzero equations, e >= 1, declared index ranges.
    void validate() const;

    std::string unknown_name(int index) const;
    std::string param_name(int index) const;
    std::string var_name(DerivVar v) const;
};

// Syntactic order data: E keeps NEG_INF for absent variables, E0 replaces it
// with 0.
struct OrderMatrix {
    std::vector<std::vector<long>> E;  // r x n over {NEG_INF} u N0
    std::vector<std::vector<long>> E0; // r x n over N0
    long e = 0;                        // max entry
    long minE0 = 0;                    // min entry of the E0 view
};

OrderMatrix order_matrix(const DAESystem& s);

} // namespace daestruct
