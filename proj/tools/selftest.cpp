#include "selftest.hpp"

#include "daestruct/corpus.hpp"
#include "daestruct/errors.hpp"
#include "daestruct/index.hpp"
#include "daestruct/parser.hpp"
#include "daestruct/rank.hpp"
#include "daestruct/report.hpp"

#include <iostream>
#include <random>

namespace daestruct {

namespace {

struct Check {
    int failures = 0;
    void expect(bool ok, const std::string& what) {
        std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
        if (!ok) ++failures;
    }
};

ExtMatrix random_ext_matrix(std::mt19937_64& rng, int maxRows, int maxCols, long maxEntry,
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

RatMatrix random_rat_matrix(std::mt19937_64& rng, int maxRows, int maxCols) {
    std::uniform_int_distribution<int> rows(1, maxRows), cols(1, maxCols);
    std::uniform_int_distribution<long> num(-6, 6);
    int s = rows(rng), m = cols(rng);
    RatMatrix M(s, std::vector<Rational>(m));
    for (auto& row : M)
        for (auto& v : row) v = Rational(num(rng));
    return M;
}

} // namespace

int run_selftest(uint64_t seed) {
    Check check;
    std::mt19937_64 rng(seed);

    // assignment oracle vs brute force, plus duality on finite matrices
    {
        int mismatches = 0, dualityFailures = 0;
        for (int t = 0; t < 200; ++t) {
            ExtMatrix A = random_ext_matrix(rng, 4, 5, 4, true);
            long fast = jacobi_number(A);
            long slow = jacobi_bruteforce(A);
            if (fast != slow) ++mismatches;
            if (A.all_finite()) {
                DualCover cover = koenig_dual(A);
                if (!cover.covers(A) || cover.total() != fast) ++dualityFailures;
            }
        }
        check.expect(mismatches == 0, "jacobi_number agrees with brute force (200 random)");
        check.expect(dualityFailures == 0, "Koenig-Egervary duality on finite matrices");
    }

    // J(A) = J(T_k(A)) and rank(M) <= J(B(M))
    {
        int failures = 0;
        for (int t = 0; t < 100; ++t) {
            ExtMatrix A = random_ext_matrix(rng, 3, 4, 4, false);
            long maxE = std::max(0L, A.max_entry());
            for (long k = std::max(1L, maxE); k <= maxE + 2; ++k)
                if (jacobi_number(A) != jacobi_number(triangular_expand(A, k))) ++failures;
        }
        check.expect(failures == 0, "triangular expansion preserves the Jacobi number");

        failures = 0;
        for (int t = 0; t < 100; ++t) {
            RatMatrix M = random_rat_matrix(rng, 5, 7);
            ExtMatrix B = binary_matrix(M);
            if (B.rows() > B.cols()) B = B.transposed();
            if (rank_exact(M) > jacobi_number(B)) ++failures;
        }
        check.expect(failures == 0, "rank bounded by the binary Jacobi number");
    }

    // corpus regressions
    struct Case {
        const char* name;
        const char* dsl;
        const char* witness; // may be null
        int sigma;
        long order;
    };
    const Case cases[] = {
        {"pendulum", corpus::kPendulum, corpus::kPendulumWitness, 4, 2},
        {"hessenberg3", corpus::kHessenberg3, nullptr, 3, 0},
        {"hessenberg4", corpus::kHessenberg4, nullptr, 4, 0},
        {"hessenberg5", corpus::kHessenberg5, nullptr, 5, 0},
        {"explicit ODE", corpus::kExplicitOde, corpus::kExplicitOdeWitness, 0, 1},
    };
    for (const Case& c : cases) {
        try {
            DAESystem sys = parse_system(c.dsl);
            DAESystem reparsed = parse_system(serialize_system(sys));
            bool roundtrip = reparsed.equations == sys.equations && reparsed.n == sys.n;
            AnalyzeOptions opts;
            opts.seed = seed;
            if (c.witness) opts.witness = read_witness_json(sys, c.witness);
            IndexReport rep = analyze(sys, opts);
            bool ok = roundtrip && rep.sigma == c.sigma && rep.order == c.order &&
                      rep.indexBoundHolds && rep.orderBoundHolds && rep.muSandwichHolds &&
                      rep.iIndependence && rep.quasiRegularAll;
            check.expect(ok, std::string(c.name) + ": sigma/order/bounds/round-trip");
        } catch (const Error& e) {
            check.expect(false, std::string(c.name) + ": " + e.what());
        }
    }

    // the non-quasi-regular system must fail with NotStabilized, not a result
    {
        bool sawNotStabilized = false;
        try {
            DAESystem sys = parse_system(corpus::kNonQuasiRegular);
            AnalyzeOptions opts;
            opts.seed = seed;
            analyze(sys, opts);
        } catch (const NotStabilized&) {
            sawNotStabilized = true;
        }
        check.expect(sawNotStabilized, "non-quasi-regular corpus system raises NotStabilized");
    }

    std::cout << (check.failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return check.failures == 0 ? 0 : 3;
}

} // namespace daestruct
