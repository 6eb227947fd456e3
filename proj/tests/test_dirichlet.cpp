#include "symcensus/dirichlet.hpp"

#include <doctest.h>

#include <numeric>
#include <stdexcept>

using namespace symcensus;

TEST_CASE("multiplicative helpers on pinned inputs") {
    CHECK(factorize(1).empty());
    CHECK(factorize(360) == Factorization{{2, 3}, {3, 2}, {5, 1}});
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(1009) == 1008);
    CHECK(moebius(1) == 1);
    CHECK(moebius(6) == 1);
    CHECK(moebius(30) == -1);
    CHECK(moebius(12) == 0);
    CHECK(sigma0(12) == 6);
    CHECK(divisors(12) == std::vector<Int>{1, 2, 3, 4, 6, 12});
    CHECK(psi_index(1) == 1);
    CHECK(psi_index(12) == 24);
    CHECK(psi_index(13) == 14);
    CHECK_THROWS_AS(factorize(0), std::domain_error);
}

TEST_CASE("divisor-sum identities") {
    for (Int n = 1; n <= 200; ++n) {
        Int phi_sum = 0, mu_sum = 0;
        for (Int d : divisors(n)) {
            phi_sum += euler_phi(d);
            mu_sum += moebius(d);
        }
        CHECK(phi_sum == n);
        CHECK(mu_sum == (n == 1 ? 1 : 0));
    }
}

TEST_CASE("legendre symbol matches square enumeration") {
    for (Int p : {3, 5, 7, 11, 13, 17, 97}) {
        std::vector<bool> is_square(p, false);
        for (Int x = 0; x < p; ++x) is_square[(x * x) % p] = true;
        for (Int a = 0; a < p; ++a) {
            Int want = a == 0 ? 0 : (is_square[a] ? 1 : -1);
            CHECK(legendre_symbol(a, p) == want);
        }
    }
    CHECK(smallest_quadratic_nonresidue(7) == 3);
    CHECK(smallest_quadratic_nonresidue(5) == 2);
    CHECK(smallest_quadratic_nonresidue(73) == 5);
}

TEST_CASE("kronecker symbol extends legendre and is multiplicative") {
    for (Int p : {3, 5, 7, 11, 13}) {
        for (Int a = -20; a <= 20; ++a) {
            Int l = legendre_symbol(((a % p) + p) % p, p);
            CHECK(kronecker_symbol(a, p) == l);
        }
    }
    // (a|2) by a mod 8
    CHECK(kronecker_symbol(1, 2) == 1);
    CHECK(kronecker_symbol(7, 2) == 1);
    CHECK(kronecker_symbol(3, 2) == -1);
    CHECK(kronecker_symbol(5, 2) == -1);
    CHECK(kronecker_symbol(4, 2) == 0);
    for (Int a = -15; a <= 15; ++a)
        for (Int m = 1; m <= 15; ++m)
            for (Int n = 1; n <= 15; ++n)
                CHECK(kronecker_symbol(a, m * n) ==
                      kronecker_symbol(a, m) * kronecker_symbol(a, n));
}

TEST_CASE("dirichlet character counts and parity split") {
    CHECK(enumerate_dirichlet_characters(1).size() == 1);
    CHECK(enumerate_dirichlet_characters(2).size() == 1);
    for (Int n : {3, 4, 5, 8, 12, 15, 16, 21}) {
        auto chars = enumerate_dirichlet_characters(n);
        CHECK(static_cast<Int>(chars.size()) == euler_phi(n));
        CHECK(count_even_characters(n) == euler_phi(n) / 2);
    }
    CHECK(count_even_characters(1) == 1);
    CHECK(count_even_characters(2) == 1);
}

TEST_CASE("conductors of pinned characters") {
    CHECK(DirichletCharacter::trivial(12).conductor() == 1);
    CHECK(DirichletCharacter::trivial(1).conductor() == 1);

    // mod 8: three nontrivial quadratic characters, conductors 4, 8, 8.
    std::vector<Int> conductors;
    for (const auto& chi : enumerate_dirichlet_characters(8))
        conductors.push_back(chi.conductor());
    std::sort(conductors.begin(), conductors.end());
    CHECK(conductors == std::vector<Int>{1, 4, 8, 8});

    // Quadratic character mod p is primitive.
    for (Int p : {3, 5, 7, 13}) {
        for (const auto& chi : enumerate_dirichlet_characters(p))
            if (chi.order() == 2) CHECK(chi.conductor() == p);
    }
}

TEST_CASE("conductor behaves under lifting") {
    // Characters mod 3 seen inside mod 12 keep conductor 3.
    Int found = 0;
    for (const auto& chi : enumerate_dirichlet_characters(12)) {
        if (chi.is_trivial()) continue;
        Int f = chi.conductor();
        CHECK((f == 3 || f == 4 || f == 12));
        if (f == 3) {
            ++found;
            // factors through (Z/3)^*: equal values at 5 and 11 (both = 2 mod 3)
            CHECK(chi.eval(5) == chi.eval(11));
        }
    }
    CHECK(found == 1);
}

TEST_CASE("character values are consistent with evaluation rules") {
    auto chars = enumerate_dirichlet_characters(15);
    for (const auto& chi : chars) {
        CHECK_FALSE(chi.eval(5).has_value());
        CHECK_FALSE(chi.eval(0).has_value());
        REQUIRE(chi.eval(2).has_value());
        CHECK(chi.eval(2 * 7) == QmodZ(*chi.eval(2) + *chi.eval(7)));
        CHECK(chi.eval(17) == chi.eval(2));  // reduction mod 15
        CHECK(chi.eval(-13) == chi.eval(2));
    }
    // the dual group separates points away from 1
    for (Int a : {2, 4, 7, 8}) {
        bool separated = false;
        for (const auto& chi : chars)
            if (!chi.eval(a)->is_zero()) separated = true;
        CHECK(separated);
    }
}

TEST_CASE("character power and product respect the group law") {
    auto chars = enumerate_dirichlet_characters(16);
    for (const auto& chi : chars) {
        CHECK(chi.pow(chi.order()).is_trivial());
        CHECK(chi.mul(chi.pow(-1)).is_trivial());
        CHECK(chi.pow(2) == chi.mul(chi));
    }
}
