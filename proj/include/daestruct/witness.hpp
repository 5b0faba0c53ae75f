#pragma once

#include "daestruct/prolong.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace daestruct {

// An exact (or residual-bounded) point on the prolonged variety: values for
// X_j^{(l)} up to maxOrder plus all parameter values.
struct Witness {
    std::map<DerivVar, Rational> values;
    int maxOrder = 0;
    Rational residualBound = Rational(0); // 0 for exact witnesses

    const Rational* find(DerivVar v) const {
        auto it = values.find(v);
        return it == values.end() ? nullptr : &it->second;
    }
    void set(DerivVar v, Rational value) {
        values[v] = std::move(value);
        if (!v.isParam && v.order > maxOrder) maxOrder = v.order;
    }
};

// How undetermined coordinates are filled: pinned values win, everything else
// draws pseudo-random rationals from the seeded generator.
struct ExtendPolicy {
    uint64_t seed = 0;
    std::map<DerivVar, Rational> pins;
};

/// Extends w so that every coordinate X_j^{(l)} with l <= targetOrder is
/// assigned and all prolongation rows up to the corresponding levels hold
/// within w.residualBound. New top derivatives are solved level by level from
/// the prolongation equations (linear in the undetermined coordinates);
/// coordinates the equations never determine are filled by `policy`.
///
/// Throws InconsistentWitness when a constraint row evaluates outside the
/// residual bound (seed off the variety) and RankDeficient when no admissible
/// pivot exists (quasi-regularity failure at this point).
Witness extend_witness(ProlongationCache& cache, const Witness& w, int targetOrder,
                       const ExtendPolicy& policy = {});
Witness extend_witness(const DAESystem& s, const Witness& w, int targetOrder,
                       const ExtendPolicy& policy = {});

// One prolongation row that reduced to a pure constraint (no undetermined
// coordinates left) during an extension pass.
struct ConstraintRecord {
    int eq;      // 0-based equation index
    int p;       // prolongation level of the row (f_eq^{(p)})
    Rational residual;
    std::vector<Rational> gradient; // d residual / d stateVars; empty outside probes
};

struct ExtensionRun {
    Witness witness;
    std::vector<ConstraintRecord> constraints;

    /// Largest |residual| over rows with p <= maxP (0 when none).
    Rational max_abs_residual(int maxP) const;
};

/// Like extend_witness but also reports every constraint row and its residual.
ExtensionRun extend_witness_run(ProlongationCache& cache, const Witness& w, int targetOrder,
                                const ExtendPolicy& policy = {});

/// First-order probe for Newton projection: evaluates all prolongation rows of
/// level <= maxLevel at `state` (plus parameters), treating deeper coordinates
/// as solvable unknowns, and returns each constraint row's residual together
/// with its exact gradient with respect to `stateVars`. Never throws on
/// constraint violations; those are the payload.
std::vector<ConstraintRecord> probe_constraints(ProlongationCache& cache,
                                                const std::map<DerivVar, Rational>& state,
                                                const std::vector<DerivVar>& stateVars,
                                                int maxLevel, const ExtendPolicy& policy,
                                                const Rational& residualBound);

} // namespace daestruct
