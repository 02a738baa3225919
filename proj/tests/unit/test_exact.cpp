#include "msd/exact.hpp"

#include <doctest.h>

using namespace msd;

TEST_CASE("rationals stay reduced") {
    Rational a(6, -4);
    CHECK(a.str() == "-3/2");
    CHECK(a.den() == 2);
    CHECK((a + Rational(3, 2)).is_zero());
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), ArgumentError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), ArgumentError);
    CHECK_THROWS_AS(Rational::parse("1/x"), ArgumentError);
}

TEST_CASE("binomials and factorials") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(5, 7) == 0);
    CHECK(binomial(-1, 3) == -1);
    CHECK(binomial(-2, 2) == 3);
    CHECK(factorial(0) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(multinomial(4, {2, 1, 1}) == 12);
    CHECK(lcm_list({4, 6, 10}) == 60);
}

TEST_CASE("smith normal form and lattice index") {
    IntegerMatrix m(2, {{2, 4}, {6, 8}});
    auto diag = smith_diagonal(m);
    REQUIRE(diag.size() == 2);
    CHECK(diag[0] == 2);
    CHECK(diag[1] == 4);
    CHECK(*lattice_index(2, m) == 8);
    IntegerMatrix low(2, {{1, 1}, {2, 2}});
    CHECK(!lattice_index(2, low).has_value());
    CHECK(rational_rank({{1, 2, 3}, {2, 4, 6}, {0, 1, 0}}) == 2);
}

TEST_CASE("orbit counts agree with breadth-first search") {
    std::vector<std::pair<std::vector<long>, std::vector<std::vector<int>>>> cases = {
        {{4, 6}, {{1, 1}}},
        {{2, 3, 5}, {{1, 1, 0}, {0, 1, 1}}},
        {{6, 4, 2}, {{1, 1, 0}, {0, 1, 1}}},
        {{3, 3, 3}, {{1, 1, 1}}},
        {{5}, {{1}}},
    };
    for (const auto& [mod, rows] : cases) CHECK(orbit_count(mod, rows) == orbit_count_bfs(mod, rows));
    CHECK(orbit_count({4, 6}, {{1, 1}}) == 2);
}
