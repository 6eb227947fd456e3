#include "symcensus/rational.hpp"

#include <doctest.h>

#include <stdexcept>
#include <unordered_set>

using namespace symcensus;

TEST_CASE("QmodZ normalizes into [0,1) with reduced denominator") {
    CHECK(QmodZ(3, 6) == QmodZ(1, 2));
    CHECK(QmodZ(7, 4) == QmodZ(3, 4));
    CHECK(QmodZ(-1, 4) == QmodZ(3, 4));
    CHECK(QmodZ(5, -10) == QmodZ(1, 2));
    CHECK(QmodZ(8, 4).is_zero());
    CHECK(QmodZ(0, 1) == QmodZ::zero());
    CHECK_THROWS_AS(QmodZ(1, 0), std::domain_error);
}

TEST_CASE("QmodZ arithmetic") {
    QmodZ a(1, 3), b(1, 4);
    CHECK((a + b) == QmodZ(7, 12));
    CHECK((a - a).is_zero());
    CHECK((-b) == QmodZ(3, 4));
    CHECK((a * 3).is_zero());
    CHECK((a * 2) == QmodZ(2, 3));
    CHECK((a * -1) == QmodZ(2, 3));
    CHECK((QmodZ(5, 12) * 1000001) == QmodZ(5, 12) * (1000001 % 12));
}

TEST_CASE("QmodZ order is the denominator") {
    CHECK(QmodZ::zero().order() == 1);
    CHECK(QmodZ(1, 2).order() == 2);
    CHECK(QmodZ(2, 6).order() == 3);
    CHECK(QmodZ(5, 12).order() == 12);
}

TEST_CASE("QmodZ parse and print round-trip") {
    CHECK(parse_qmodz("3/8") == QmodZ(3, 8));
    CHECK(parse_qmodz("0") == QmodZ::zero());
    CHECK(parse_qmodz("2") == QmodZ::zero());
    CHECK(parse_qmodz("-1/4") == QmodZ(3, 4));
    CHECK(QmodZ(3, 8).str() == "3/8");
    CHECK(QmodZ::zero().str() == "0/1");
    CHECK_THROWS_AS(parse_qmodz("x/y"), std::invalid_argument);
    CHECK_THROWS_AS(parse_qmodz("1/0"), std::domain_error);
}

TEST_CASE("QmodZ hashes agree on equal values") {
    std::unordered_set<QmodZ> s;
    s.insert(QmodZ(1, 2));
    s.insert(QmodZ(2, 4));
    s.insert(QmodZ(3, 4));
    CHECK(s.size() == 2);
}

TEST_CASE("checked_mul guards overflow") {
    CHECK(checked_mul(1 << 20, 1 << 20) == Int(1) << 40);
    CHECK_THROWS_AS(checked_mul(Int(1) << 40, Int(1) << 40), std::overflow_error);
    CHECK(pow_int(3, 7) == 2187);
    CHECK(pow_int(2, 0) == 1);
}
