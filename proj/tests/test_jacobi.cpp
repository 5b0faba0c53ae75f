#include "helpers.hpp"

#include "daestruct/errors.hpp"
#include "daestruct/jacobi.hpp"
#include "daestruct/rank.hpp"

#include <doctest.h>

using namespace daestruct;

namespace {

ExtMatrix random_ext(std::mt19937_64& rng, int maxRows, int maxCols, long maxEntry,
                     bool allowNegInf) {
    std::uniform_int_distribution<int> rows(1, maxRows), cols(1, maxCols);
    int s = rows(rng), m = cols(rng);
    if (s > m) std::swap(s, m);
    ExtMatrix A(s, m, 0);
    std::uniform_int_distribution<long> entry(allowNegInf ? -1 : 0, maxEntry);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < m; ++j) {
            long v = entry(rng);
            A.at(i, j) = v < 0 ? NEG_INF : v;
        }
    return A;
}

} // namespace

TEST_SUITE("jacobi") {

TEST_CASE("paper matrices") {
    ExtMatrix e0({{2, 0, 0}, {0, 2, 0}, {0, 0, 0}});
    CHECK(jacobi_number(e0) == 4);
    ExtMatrix e({{2, NEG_INF, 0}, {NEG_INF, 2, 0}, {0, 0, NEG_INF}});
    CHECK(jacobi_number(e) == 2);

    ExtMatrix ident({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(jacobi_number(ident) == 3);
    ExtMatrix blocked({{1, 0}, {NEG_INF, NEG_INF}});
    CHECK(jacobi_number(blocked) == NEG_INF);
}

TEST_CASE("brute force basics") {
    CHECK(jacobi_bruteforce(ExtMatrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}})) == 2); // hessenberg-3 E0
    CHECK(jacobi_bruteforce(ExtMatrix({{5}})) == 5);
    CHECK(jacobi_bruteforce(ExtMatrix({{1, 2}, {3, 4}})) == 5);
    ExtMatrix big(10, 12, 1);
    CHECK_THROWS_AS(jacobi_bruteforce(big), TooLarge);
}

TEST_CASE("koenig dual examples") {
    ExtMatrix e0({{2, 0, 0}, {0, 2, 0}, {0, 0, 0}});
    DualCover c = koenig_dual(e0);
    CHECK(c.covers(e0));
    CHECK(c.total() == 4);

    ExtMatrix zero(3, 3, 0);
    DualCover z = koenig_dual(zero);
    CHECK(z.covers(zero));
    CHECK(z.total() == 0);

    ExtMatrix m({{1, 2}, {3, 4}});
    DualCover d = koenig_dual(m);
    CHECK(d.covers(m));
    CHECK(d.total() == 5);

    CHECK_THROWS_AS(koenig_dual(ExtMatrix({{1, NEG_INF}})), InfiniteEntry);
}

TEST_CASE("binary matrix") {
    RatMatrix M{{Rational(0), Rational(5)}, {Rational(7), Rational(0)}};
    ExtMatrix B = binary_matrix(M);
    CHECK(B.a == std::vector<std::vector<long>>{{0, 1}, {1, 0}});
    RatMatrix Z(2, std::vector<Rational>(2, Rational(0)));
    CHECK(binary_matrix(Z).a == std::vector<std::vector<long>>{{0, 0}, {0, 0}});

    // pendulum J_{1,1} evaluated at the witness, then the indicator
    const DAESystem& pend = daestruct::testing::pendulum();
    ProlongationCache cache(pend);
    Witness w = extend_witness(cache, daestruct::testing::pendulum_witness(), 2);
    RatMatrix J = pseudo_jacobian(pend, 1, 1).evaluate([&](DerivVar v) { return w.find(v); });
    CHECK(binary_matrix(J).a == std::vector<std::vector<long>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
}

TEST_CASE("triangular blocks") {
    ExtMatrix t30 = triangular_expand(ExtMatrix({{0}}), 3);
    CHECK(t30.a == std::vector<std::vector<long>>{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    ExtMatrix t22 = triangular_expand(ExtMatrix({{2}}), 2);
    CHECK(t22.a == std::vector<std::vector<long>>{{1, 0}, {1, 1}});
    ExtMatrix t31 = triangular_expand(ExtMatrix({{1}}), 3);
    CHECK(t31.a == std::vector<std::vector<long>>{{0, 0, 0}, {0, 0, 0}, {1, 0, 0}});
    CHECK_THROWS_AS(triangular_expand(ExtMatrix({{4}}), 3), KTooSmall);
}

TEST_CASE("bounds on the corpus") {
    JacobiBounds p = jacobi_bounds(daestruct::testing::pendulum());
    CHECK(p.J_E0 == 4);
    CHECK(p.indexBoundRHS == 6);
    CHECK(p.J_E == 2);

    JacobiBounds h = jacobi_bounds(daestruct::testing::hessenberg3());
    CHECK(h.J_E0 == 2);
    CHECK(h.indexBoundRHS == 3);
    CHECK(h.J_E == 0);

    JacobiBounds ode = jacobi_bounds(daestruct::testing::explicit_ode());
    CHECK(ode.J_E0 == 1);
    CHECK(ode.indexBoundRHS == 1); // 1 + 1 - 1
}

TEST_CASE("assignment agrees with brute force and duality holds") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 300; ++t) {
        ExtMatrix A = random_ext(rng, 4, 5, 4, true);
        long fast = jacobi_number(A);
        CHECK(fast == jacobi_bruteforce(A));
        if (A.all_finite()) {
            DualCover c = koenig_dual(A);
            CHECK(c.covers(A));
            CHECK(c.total() == fast);
        }
    }
}

TEST_CASE("triangular expansion preserves J") {
    std::mt19937_64 rng(103);
    for (int t = 0; t < 100; ++t) {
        ExtMatrix A = random_ext(rng, 3, 4, 4, false);
        long maxE = std::max(1L, A.max_entry());
        for (long k = maxE; k <= maxE + 2; ++k)
            CHECK(jacobi_number(A) == jacobi_number(triangular_expand(A, k)));
    }
}

TEST_CASE("weak duality for random covers") {
    std::mt19937_64 rng(107);
    std::uniform_int_distribution<long> pot(0, 4);
    for (int t = 0; t < 100; ++t) {
        ExtMatrix A = random_ext(rng, 3, 4, 3, false);
        // random feasible cover: lambda free, phi forced up to feasibility
        std::vector<long> lambda(A.rows()), phi(A.cols(), 0);
        for (auto& l : lambda) l = pot(rng);
        for (size_t j = 0; j < A.cols(); ++j)
            for (size_t i = 0; i < A.rows(); ++i)
                phi[j] = std::max(phi[j], A.at(i, j) - lambda[i]);
        long total = 0;
        for (long l : lambda) total += l;
        for (long p : phi) total += p;
        CHECK(total >= jacobi_number(A));
    }
}

TEST_CASE("invariances") {
    std::mt19937_64 rng(109);
    for (int t = 0; t < 60; ++t) {
        ExtMatrix A = random_ext(rng, 3, 4, 4, true);
        // row and column permutation invariance
        ExtMatrix P = A;
        std::shuffle(P.a.begin(), P.a.end(), rng);
        std::vector<size_t> perm(A.cols());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        ExtMatrix Q(P.rows(), P.cols(), 0);
        for (size_t i = 0; i < P.rows(); ++i)
            for (size_t j = 0; j < P.cols(); ++j) Q.at(i, j) = P.at(i, perm[j]);
        CHECK(jacobi_number(Q) == jacobi_number(A));
    }
    // adding c to every entry of a square finite matrix adds n*c
    for (int t = 0; t < 40; ++t) {
        ExtMatrix A = random_ext(rng, 3, 3, 4, false);
        while (A.rows() != A.cols()) A = random_ext(rng, 3, 3, 4, false);
        ExtMatrix B = A;
        for (auto& row : B.a)
            for (auto& v : row) v += 3;
        CHECK(jacobi_number(B) == jacobi_number(A) + 3 * static_cast<long>(A.rows()));
    }
}

} // TEST_SUITE
