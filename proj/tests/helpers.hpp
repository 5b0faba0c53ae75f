#pragma once

#include "daestruct/corpus.hpp"
#include "daestruct/errors.hpp"
#include "daestruct/parser.hpp"
#include "daestruct/report.hpp"
#include "daestruct/witness.hpp"

#include <random>

namespace daestruct::testing {

inline const DAESystem& pendulum() {
    static DAESystem s = parse_system(corpus::kPendulum);
    return s;
}

inline Witness pendulum_witness() {
    return read_witness_json(pendulum(), corpus::kPendulumWitness);
}

inline const DAESystem& hessenberg3() {
    static DAESystem s = parse_system(corpus::kHessenberg3);
    return s;
}

inline Witness hessenberg3_witness() {
    return read_witness_json(hessenberg3(), corpus::kHessenberg3Witness);
}

inline const DAESystem& explicit_ode() {
    static DAESystem s = parse_system(corpus::kExplicitOde);
    return s;
}

inline DiffPoly var(int j, int l) { return DiffPoly::variable(DerivVar::unknown(j, l)); }
inline DiffPoly par(int j) { return DiffPoly::variable(DerivVar::param(j)); }

// Random sparse polynomial over x0..x{nvars-1} with orders <= maxOrder.
inline DiffPoly random_poly(std::mt19937_64& rng, int nvars, int maxOrder, int maxTerms,
                            int maxDegree) {
    std::uniform_int_distribution<int> termCount(1, maxTerms);
    std::uniform_int_distribution<int> degree(0, maxDegree);
    std::uniform_int_distribution<int> pickVar(0, nvars - 1);
    std::uniform_int_distribution<int> pickOrder(0, maxOrder);
    std::uniform_int_distribution<long> coef(-5, 5);
    DiffPoly p;
    int terms = termCount(rng);
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        int d = degree(rng);
        for (int q = 0; q < d; ++q)
            m = m * Monomial(DerivVar::unknown(pickVar(rng), pickOrder(rng)));
        long c = coef(rng);
        if (c != 0) p.add_term(m, Rational(c));
    }
    return p;
}

} // namespace daestruct::testing
