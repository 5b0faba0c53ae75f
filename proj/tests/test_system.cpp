#include "helpers.hpp"

#include "daestruct/jacobi.hpp"

#include <doctest.h>

using namespace daestruct;

TEST_SUITE("system") {

TEST_CASE("pendulum order matrices") {
    OrderMatrix om = order_matrix(daestruct::testing::pendulum());
    CHECK(om.E0 == std::vector<std::vector<long>>{{2, 0, 0}, {0, 2, 0}, {0, 0, 0}});
    CHECK(om.E == std::vector<std::vector<long>>{{2, NEG_INF, 0}, {NEG_INF, 2, 0}, {0, 0, NEG_INF}});
    CHECK(om.e == 2);
    CHECK(om.minE0 == 0);
}

TEST_CASE("single equation") {
    DAESystem s = parse_system("unknowns: x1\nequations:\n  x1'\n");
    OrderMatrix om = order_matrix(s);
    CHECK(om.E == std::vector<std::vector<long>>{{1}});
    CHECK(om.e == 1);
}

TEST_CASE("J(E) <= J(E0) on the corpus") {
    for (const char* src : {corpus::kPendulum, corpus::kHessenberg3, corpus::kHessenberg4,
                            corpus::kHessenberg5, corpus::kExplicitOde, corpus::kNonQuasiRegular}) {
        DAESystem s = parse_system(src);
        OrderMatrix om = order_matrix(s);
        long jE = jacobi_number(ExtMatrix(om.E));
        long jE0 = jacobi_number(ExtMatrix(om.E0));
        CHECK((jE == NEG_INF || jE <= jE0));
    }
}

} // TEST_SUITE
