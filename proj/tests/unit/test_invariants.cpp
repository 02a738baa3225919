#include "msd/evaluate.hpp"
#include "msd/invariants.hpp"
#include "msd/tautring.hpp"

#include <doctest.h>

using namespace msd;

TEST_CASE("Euler characteristics of small strata") {
    Evaluator ev;
    CHECK(euler_characteristic(ev, connected_spec(0, {-5, 1, 1, 1})).chi == -1);
    CHECK(euler_characteristic(ev, connected_spec(0, {-2, -2, 1, 1})).chi == -1);
    CHECK(euler_characteristic(ev, connected_spec(2, {2})).chi == Rational(-1, 40));
    for (int k = 2; k <= 4; ++k)
        CHECK(euler_characteristic(ev, connected_spec(1, {-k - 1, 1, k})).chi == Rational(k * (k + 1), 6));
    CHECK(hyperelliptic_chi(2, HyperellipticForm::Minimal) == Rational(-1, 40));
}

TEST_CASE("level sums agree with graph sums") {
    Evaluator ev;
    LevelSums ls(ev);
    for (auto spec : {connected_spec(0, {-4, -1, 1, 1, 1}), connected_spec(0, {-3, -3, 1, 1, 2}),
                      connected_spec(1, {-3, 1, 2}), connected_spec(2, {2})}) {
        auto [chi, top] = ls.chi_and_top_chern(spec);
        CHECK(chi == euler_characteristic(ev, spec).chi);
        const int d = dimension(spec).d;
        CHECK(top == (d % 2 ? -chi : chi));
    }
}

TEST_CASE("Chern polynomial duality") {
    Evaluator ev;
    for (auto spec : {connected_spec(1, {-3, 1, 2}), connected_spec(1, {2, 1, -3}), connected_spec(2, {2})}) {
        auto rep = chern_polynomial(ev, spec);
        CHECK(rep.duality);
        Boundary& bd = ev.boundary(spec);
        TautRing ring(bd);
        CHECK((rep.c1_closed - chern_class(ring, 1)).is_zero());
    }
}

TEST_CASE("exponential of the boundary divisor") {
    Evaluator ev;
    for (auto spec : {connected_spec(1, {-3, 1, 2}), connected_spec(2, {2}), connected_spec(0, {-3, -1, 0, 1, 1})}) {
        TautRing ring(ev.boundary(spec));
        CHECK((exp_boundary_divisor(ring) - exp_via_normal_series(ring)).is_zero());
    }
}

TEST_CASE("series") {
    auto a = inverse_todd_series(12);
    CHECK(a == exp_prototype_series(12));
    CHECK(a[0] == 1);
    CHECK(a[1] == Rational(1, 2));
    CHECK(a[2] == Rational(1, 6));
}

TEST_CASE("hodge cross-checks from a table") {
    auto rows = cross_check(parse_chi_table(R"([{"genus":3,"orders":[4],"chi":"-1/1"}])"));
    CHECK_FALSE(rows.empty());
}
