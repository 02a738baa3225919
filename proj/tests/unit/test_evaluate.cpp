#include "msd/evaluate.hpp"

#include <doctest.h>

using namespace msd;

TEST_CASE("closed forms without fixtures") {
    Evaluator ev{FixtureRegistry{}};
    CHECK(ev.xi_top(connected_spec(0, {0, 0, -2})) == 1);
    CHECK(ev.xi_top(connected_spec(1, {2, -2})) == Rational(-1, 8));
    CHECK(ev.xi_top(connected_spec(1, {2, 1, -3})) == Rational(5, 8));
    CHECK(ev.xi_top(connected_spec(0, {-5, 1, 1, 1})) == -4);
    CHECK(ev.fixtures().size() == 0);
}

TEST_CASE("shipped fixtures agree with closed forms where both exist") {
    Evaluator with;
    Evaluator without{FixtureRegistry{}};
    for (auto spec : {connected_spec(0, {0, 0, -2}), connected_spec(1, {2, -2}), connected_spec(1, {2, 1, -3})})
        CHECK(with.xi_top(spec) == without.xi_top(spec));
    CHECK(with.xi_top(connected_spec(2, {2})) == Rational(-1, 640));
    CHECK(with.rule_for(connected_spec(2, {2})) == "fixture");
}

TEST_CASE("conflicting fixtures are rejected") {
    FixtureRegistry r;
    auto spec = connected_spec(1, {0});
    auto key = make_key(spec, 1, 0, {0});
    r.register_fixture(key, Rational(1, 24), "test");
    CHECK_NOTHROW(r.register_fixture(key, Rational(1, 24), "again"));
    CHECK_THROWS_AS(r.register_fixture(key, Rational(1, 12), "other"), ArgumentError);
    REQUIRE(r.lookup(key) != nullptr);
    CHECK(r.lookup(key)->value == Rational(1, 24));
}

TEST_CASE("fixture files") {
    FixtureRegistry r;
    r.load_json_text(R"([{"spec":{"components":[{"genus":2,"orders":[2]}]},"integrand":{"xi_power":3},
                         "value":"-1/640","provenance":"t"}])");
    CHECK(r.size() == 1);
    CHECK_THROWS(r.load_json_text("[{}]"));
}

TEST_CASE("missing genus-2 value cannot be evaluated from closed forms alone") {
    Evaluator ev{FixtureRegistry{}};
    CHECK_THROWS_AS(ev.xi_top(connected_spec(2, {2})), Unevaluatable);
}
