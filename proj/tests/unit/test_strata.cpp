#include "msd/strata.hpp"

#include <doctest.h>

using namespace msd;

TEST_CASE("validation") {
    CHECK(validate(connected_spec(2, {2})).ok);
    CHECK(validate(connected_spec(0, {-3, 1, 0})).ok);
    CHECK_FALSE(validate(connected_spec(0, {-3, 1})).ok);
    CHECK_FALSE(validate(connected_spec(1, {1})).ok);
    CHECK_FALSE(validate(connected_spec(0, {-1, -1})).ok);
    CHECK_FALSE(validate(connected_spec(0, {2})).ok);
    CHECK_THROWS_AS(require_valid(connected_spec(1, {3})), SpecError);
}

TEST_CASE("dimensions") {
    CHECK(dimension(connected_spec(2, {2})).d == 3);
    CHECK(dimension(connected_spec(2, {1, 1})).d == 4);
    CHECK(dimension(connected_spec(1, {-3, 1, 2})).d == 2);
    CHECK(dimension(connected_spec(0, {-5, 1, 1, 1})).d == 1);
    CHECK(dimension(connected_spec(0, {-2, 0, 0})).d == 0);
}

TEST_CASE("residue conditions") {
    // a single pole has zero residue
    CHECK(forced_zero_poles(connected_spec(0, {-3, 1, 0})) == std::vector<int>{0});
    CHECK(forced_zero_poles(connected_spec(0, {-2, -2, 2})).empty());
    auto two = parse_spec(R"({"components":[{"genus":0,"orders":[-2,0,0]},{"genus":0,"orders":[-2,0,0]}],
                             "residue_parts":[{"points":[[0,0],[1,0]]}]})");
    CHECK(two.components.size() == 2);
    CHECK(two.has_constraints());
    CHECK(parse_spec(spec_to_json(two)) == two);
    CHECK(spec_label(connected_spec(1, {-3, 1, 2})) == "g1(-3,1,2)");
}

TEST_CASE("malformed specs are rejected") {
    CHECK_THROWS_AS(parse_spec("{"), SpecError);
    CHECK_THROWS_AS(parse_spec(R"({"components":[]})"), SpecError);
    CHECK_THROWS_AS(parse_spec(R"({"components":[{"genus":-1,"orders":[0]}]})"), SpecError);
}
