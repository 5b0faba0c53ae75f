#pragma once

#include "daestruct/prolong.hpp"

#include <map>
#include <optional>

namespace daestruct {

struct MembershipBounds {
    long N = 0;          // derivative-order bound (floored at 0)
    long NSyntactic = 0; // J(E0) - min eps0 + max(ord f, e-1)
    long D = 1;          // max total degree of the generators
    Integer degreeBound; // deg f + D^{r(N+1)}
};

/// N = sigma + max(-1, ord(f) - e), floored at 0.
long order_bound(int sigma, int e, const DiffPoly& f);

/// Syntactic cap J(E0) - min eps0 + max(ord f, e-1).
long order_bound_syntactic(const DAESystem& s, const DiffPoly& f);

/// deg f + D^{r(N+1)} as an exact big integer.
Integer degree_bound(long D, int r, long N, const DiffPoly& f);

MembershipBounds membership_bounds(const DAESystem& s, int sigma, const DiffPoly& f);

// f = sum g_{ij} f_i^{(j)}; keys are (equation index i, derivative order j).
struct Representation {
    std::map<std::pair<int, int>, DiffPoly> cofactors;
};

struct MembershipOptions {
    long degCap = -1;        // -1: deg f + 4
    long maxColumns = 200000; // Macaulay size limit -> CapExceeded
};

/// Searches degrees deg f .. degCap for cofactors g_ij (j <= N) by building a
/// triangular basis of monomial multiples of the prolonged generators and
/// reducing f against it. Any returned representation has been re-expanded and
/// checked exactly. nullopt = NotFound (not a non-membership certificate).
std::optional<Representation> find_representation(ProlongationCache& cache, const DiffPoly& f,
                                                  long N, const MembershipOptions& opts = {});

/// Exact expansion sum g_ij f_i^{(j)} of a representation.
DiffPoly expand_representation(ProlongationCache& cache, const Representation& rep);

} // namespace daestruct
