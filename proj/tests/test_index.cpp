#include "helpers.hpp"

#include "daestruct/errors.hpp"
#include "daestruct/index.hpp"

#include <doctest.h>

using namespace daestruct;

TEST_SUITE("index") {

TEST_CASE("mu values from the worked examples") {
    const DAESystem& pend = daestruct::testing::pendulum();
    ProlongationCache cache(pend);
    RankOracle oracle = RankOracle::witness_oracle(daestruct::testing::pendulum_witness());
    CHECK(mu_value(cache, 0, 1, oracle) == 0);
    CHECK(mu_value(cache, 3, 1, oracle) == 3);
    CHECK(mu_value(cache, 5, 1, oracle) == 4);
}

TEST_CASE("differentiation index of the corpus") {
    {
        const DAESystem& pend = daestruct::testing::pendulum();
        ProlongationCache cache(pend);
        RankOracle oracle = RankOracle::witness_oracle(daestruct::testing::pendulum_witness());
        IndexResult idx = differentiation_index(cache, oracle);
        CHECK(idx.sigma == 4);
        CHECK(idx.mu.values == std::vector<long>{0, 1, 2, 3, 4, 4});
        CHECK(order_of_ideal(pend, idx.sigma, 4) == 2);
    }
    for (auto [src, n] : {std::pair{corpus::kHessenberg3, 3}, {corpus::kHessenberg4, 4},
                          {corpus::kHessenberg5, 5}}) {
        DAESystem s = parse_system(src);
        ProlongationCache cache(s);
        RankOracle oracle = RankOracle::generic_oracle(5, 3);
        IndexResult idx = differentiation_index(cache, oracle);
        CHECK(idx.sigma == n);
        CHECK(order_of_ideal(s, idx.sigma, idx.mu.values[idx.sigma]) == 0);
    }
    {
        const DAESystem& ode = daestruct::testing::explicit_ode();
        ProlongationCache cache(ode);
        RankOracle oracle = RankOracle::generic_oracle(5, 3);
        IndexResult idx = differentiation_index(cache, oracle);
        CHECK(idx.sigma == 0);
        CHECK(order_of_ideal(ode, 0, idx.mu.values[0]) == 1);
    }
}

TEST_CASE("non-quasi-regular system never stabilizes") {
    DAESystem s = parse_system(corpus::kNonQuasiRegular);
    ProlongationCache cache(s);
    RankOracle oracle = RankOracle::generic_oracle(5, 3);
    CHECK_THROWS_AS(differentiation_index(cache, oracle), NotStabilized);
}

TEST_CASE("order errors on inconsistent ranks") {
    const DAESystem& pend = daestruct::testing::pendulum();
    CHECK_THROWS_AS(order_of_ideal(pend, 1, 99), NegativeOrder);
}

TEST_CASE("hilbert-kolchin data") {
    const DAESystem& pend = daestruct::testing::pendulum();
    HKData h = hk_data(pend, 2);
    CHECK(h.linearCoeff == 0);
    CHECK(h.constantTerm == 2);
    CHECK(h.regularityBound == 1);

    const DAESystem& hess = daestruct::testing::hessenberg3();
    HKData hh = hk_data(hess, 0);
    CHECK(hh.linearCoeff == 0);
    CHECK(hh.constantTerm == 0);
    CHECK(hh.regularityBound == 0);

    DAESystem s = parse_system("unknowns: x1 x2\nequations:\n  x1'\n");
    HKData hs = hk_data(s, 1);
    CHECK(hs.linearCoeff == 1);
}

TEST_CASE("trdeg formula") {
    const DAESystem& pend = daestruct::testing::pendulum();
    CHECK(trdeg_report(pend, 1, 4, 4) == 2);  // (n-r)(i+1) + er - mu_sigma
    CHECK(trdeg_report(pend, 1, 0, 0) == 6);  // mu_0 = 0
    const DAESystem& hess = daestruct::testing::hessenberg3();
    CHECK(trdeg_report(hess, 0, 3, 3) == 0);
}

TEST_CASE("analyze pipeline on the pendulum") {
    const DAESystem& pend = daestruct::testing::pendulum();
    AnalyzeOptions opts;
    opts.seed = 42;
    opts.witness = daestruct::testing::pendulum_witness();
    IndexReport rep = analyze(pend, opts);
    CHECK(rep.sigma == 4);
    CHECK(rep.order == 2);
    CHECK(rep.mu.values == std::vector<long>{0, 1, 2, 3, 4, 4});
    CHECK(rep.bounds.J_E0 == 4);
    CHECK(rep.bounds.J_E == 2);
    CHECK(rep.bounds.indexBoundRHS == 6);
    CHECK(rep.sigma + rep.order == 6);
    CHECK(rep.indexBoundHolds);
    CHECK(rep.orderBoundHolds);
    CHECK(rep.muSandwichHolds);
    CHECK(rep.iIndependence);
    CHECK(rep.hypothesisAgree);
    CHECK(rep.quasiRegularAll);
    // lambda is part of the derived base point
    CHECK(rep.basePoint.at(DerivVar::unknown(2, 0)) == make_rational(3, 5));
}

TEST_CASE("analyze is deterministic given the seed") {
    const DAESystem& pend = daestruct::testing::pendulum();
    AnalyzeOptions opts;
    opts.seed = 42;
    IndexReport a = analyze(pend, opts);
    IndexReport b = analyze(pend, opts);
    CHECK(a.mu.values == b.mu.values);
    CHECK(a.sigma == b.sigma);
}

} // TEST_SUITE
