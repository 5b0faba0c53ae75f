// Non-autonomous systems enter through encodings rather than special cases:
// time becomes an unknown with t' - 1 = 0, and rational coefficients in t are
// cleared with an extra unknown S satisfying S*r(t) - 1 = 0.

#include "helpers.hpp"

#include "daestruct/index.hpp"

#include <doctest.h>

using namespace daestruct;

TEST_SUITE("encodings") {

TEST_CASE("time as an unknown: x' = t*x") {
    DAESystem s = parse_system("unknowns: x t\nequations:\n  x' - t*x\n  t' - 1\n");
    AnalyzeOptions opts;
    opts.seed = 9;
    IndexReport rep = analyze(s, opts);
    CHECK(rep.sigma == 0);
    CHECK(rep.order == 2); // x(0) and t(0) are both free
    CHECK(rep.indexBoundHolds);
    CHECK(rep.iIndependence);
}

TEST_CASE("Rabinowitz trick: x' = x/t via S*t = 1") {
    DAESystem s = parse_system(
        "unknowns: x t S\nequations:\n  x' - S*x\n  t' - 1\n  S*t - 1\n");
    Witness w;
    w.set(DerivVar::unknown(0, 0), Rational(5));
    w.set(DerivVar::unknown(1, 0), Rational(2));
    w.set(DerivVar::unknown(2, 0), make_rational(1, 2));
    AnalyzeOptions opts;
    opts.seed = 9;
    opts.witness = w;
    IndexReport rep = analyze(s, opts);
    CHECK(rep.sigma == 1);
    CHECK(rep.order == 2); // S(0) is forced by the algebraic constraint
    CHECK(rep.bounds.J_E0 == 2);
    CHECK(rep.sigma + rep.order == rep.bounds.indexBoundRHS); // bound attained
    CHECK(rep.quasiRegularAll);
    CHECK(rep.hypothesisAgree);

    // the extension reproduces d(1/t)/dt = -1/t^2 at t = 2
    ProlongationCache cache(s);
    Witness ext = extend_witness(cache, w, 1);
    CHECK(*ext.find(DerivVar::unknown(2, 1)) == make_rational(-1, 4));
}

} // TEST_SUITE
