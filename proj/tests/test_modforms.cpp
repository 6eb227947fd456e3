#include "symcensus/modforms.hpp"

#include "symcensus/dirichlet.hpp"
#include "dimension_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <thread>
#include <vector>

using namespace symcensus;

TEST_CASE("curve geometry pinned values") {
    auto g1 = curve_geometry(1);
    CHECK(g1.index == 1);
    CHECK(g1.elliptic2 == 1);
    CHECK(g1.elliptic3 == 1);
    CHECK(g1.cusps == 1);
    CHECK(g1.genus == 0);

    CHECK(curve_geometry(2).cusps == 2);
    CHECK(curve_geometry(4).cusps == 3);
    CHECK(curve_geometry(4).genus == 0);

    auto g5 = curve_geometry(5);
    CHECK(g5.index == 12);
    CHECK(g5.cusps == 4);
    CHECK(g5.genus == 0);

    CHECK(curve_geometry(11).genus == 1);
    CHECK(curve_geometry(13).genus == 2);
    CHECK(curve_geometry(16).genus == 2);
    CHECK(curve_geometry(17).genus == 5);
    CHECK(curve_geometry(25).genus == 12);
    CHECK(curve_geometry(1009).genus == 41917);
}

TEST_CASE("cusp dimensions pinned values") {
    CHECK(dim_cusp(12, 1) == 1);
    CHECK(dim_cusp(2, 1) == 0);
    CHECK(dim_cusp(2, 11) == 1);
    CHECK(dim_cusp(2, 12) == 0);
    CHECK(dim_cusp(2, 24) == 5);
    CHECK(dim_cusp(4, 5) == 1);
    CHECK(dim_cusp(4, 7) == 3);
    CHECK(dim_cusp(6, 4) == 1);
    CHECK(dim_cusp(8, 2) == 1);
    CHECK(dim_cusp(16, 1) == 1);
    CHECK(dim_cusp(12, 97) == 4264);
    CHECK(dim_cusp(12, 1009) == 466116);
}

TEST_CASE("invalid weights and levels are rejected") {
    CHECK_THROWS_AS(dim_cusp(3, 7), std::domain_error);
    CHECK_THROWS_AS(dim_cusp(0, 7), std::domain_error);
    CHECK_THROWS_AS(dim_cusp(-2, 7), std::domain_error);
    CHECK_THROWS_AS(dim_cusp(4, 0), std::domain_error);
    CHECK_THROWS_AS(dim_new(5, 10), std::domain_error);
    CHECK_THROWS_AS(curve_geometry(0), std::domain_error);
}

TEST_CASE("production dimensions match the trace oracle") {
    for (Int k = 2; k <= 12; k += 2)
        for (Int n = 1; n <= 60; ++n) {
            CAPTURE(k);
            CAPTURE(n);
            CHECK(dim_cusp(k, n) == oracle::dim_cusp(k, n));
        }
}

TEST_CASE("new/old decomposition identity") {
    for (Int k = 2; k <= 12; k += 2)
        for (Int n = 1; n <= 300; ++n) {
            Int assembled = 0;
            for (Int d : divisors(n)) assembled += sigma0(n / d) * dim_new(k, d);
            CAPTURE(k);
            CAPTURE(n);
            CHECK(assembled == dim_cusp(k, n));
            CHECK(dim_new(k, n) >= 0);
            CHECK(dim_new(k, n) <= dim_cusp(k, n));
        }
}

TEST_CASE("newform dimensions pinned and cross-checked") {
    CHECK(dim_new(12, 1) == dim_cusp(12, 1));
    for (Int p : {11, 13, 97})
        CHECK(dim_new(12, p) == dim_cusp(12, p) - 2 * dim_cusp(12, 1));
    CHECK(dim_new(12, 97) == 4262);
    // inclusion-exclusion against the oracle at a squarefree composite
    Int direct = oracle::dim_cusp(2, 22) - 2 * oracle::dim_cusp(2, 11) -
                 2 * oracle::dim_cusp(2, 2) + 4 * oracle::dim_cusp(2, 1);
    CHECK(dim_new(2, 22) == direct);
}

TEST_CASE("dimension records and density rows are consistent") {
    auto rec = dimension_record(12, 97);
    CHECK(rec.dim_full == 4264);
    CHECK(rec.dim_new == 4262);

    auto rows = asymptotic_report(12, {97, 1009});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].level == 97);
    CHECK(rows[0].dimension == 4264);
    CHECK(rows[0].ratio == doctest::Approx(4264.0 / (97.0 * 97.0)));
    CHECK(rows[1].target == doctest::Approx(11.0 / (4.0 * M_PI * M_PI)));
    CHECK(rows[1].relative_error ==
          doctest::Approx((rows[1].ratio - rows[1].target) / rows[1].target));

    auto nd = newform_density(12, 97, 1);
    CHECK(nd.dimension == 4262);
    CHECK(nd.target == doctest::Approx(full_density_target(12) *
                                       std::pow(1.0 - 1.0 / 9409.0, 2)));
}

TEST_CASE("large-level density approaches the squarefree Euler product") {
    // The exact density of dim_cusp(k, N)/N^2 at prime N is (k-1)/24
    // up to O(1/N) corrections; check at two large primes.
    for (Int p : {1009, 2003}) {
        double ratio = static_cast<double>(dim_cusp(12, p)) /
                       (static_cast<double>(p) * static_cast<double>(p));
        CHECK(std::abs(ratio - 11.0 / 24.0) < 0.01);
    }
}

TEST_CASE("memoized dimensions are stable under concurrent access") {
    std::vector<Int> expected;
    for (Int n = 1; n <= 40; ++n) expected.push_back(dim_cusp(10, n));

    std::vector<std::thread> pool;
    std::vector<int> failures(8, 0);
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([&, t] {
            for (Int n = 1; n <= 40; ++n)
                if (dim_cusp(10, n) != expected[n - 1]) ++failures[t];
        });
    for (auto& th : pool) th.join();
    for (int f : failures) CHECK(f == 0);
}
