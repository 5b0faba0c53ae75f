#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace daestruct {

// A derivative variable X_j^{(l)} or a parameter symbol. Parameters behave as
// variables with zero total derivative and carry no derivation order.
struct DerivVar {
    int32_t index = 0; // 0-based unknown index, or parameter index when isParam
    int32_t order = 0; // derivation order l; always 0 for parameters
    bool isParam = false;

    static DerivVar unknown(int32_t index, int32_t order) { return {index, order, false}; }
    static DerivVar param(int32_t index) { return {index, 0, true}; }

    // Canonical order: unknowns by (index, order), then parameters by index.
    friend auto operator<=>(const DerivVar& a, const DerivVar& b) {
        if (a.isParam != b.isParam) return a.isParam <=> b.isParam;
        if (a.index != b.index) return a.index <=> b.index;
        return a.order <=> b.order;
    }
    friend bool operator==(const DerivVar&, const DerivVar&) = default;
};

/// Debug/display name: x3'' style, using a caller-provided base name.
std::string deriv_var_name(const std::string& base, int order);

} // namespace daestruct
