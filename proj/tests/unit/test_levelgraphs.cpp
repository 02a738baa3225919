#include "msd/levelgraphs.hpp"

#include <doctest.h>

using namespace msd;

TEST_CASE("boundary of the genus-2 minimal stratum") {
    Boundary bd(connected_spec(2, {2}));
    CHECK(bd.graphs(1).size() == 2);
    CHECK(bd.graphs(2).size() == 1);
    CHECK(bd.graphs(3).empty());
}

TEST_CASE("divisor count in the genus-1 family") {
    // floor((k+1)/2) + floor(k/2) + 3 divisors
    for (int k = 2; k <= 6; ++k) {
        Boundary bd(connected_spec(1, {-k - 1, 1, k}));
        CHECK(static_cast<int>(bd.graphs(1).size()) == (k + 1) / 2 + k / 2 + 3);
    }
}

TEST_CASE("genus-0 four-point strata have three or more divisors") {
    Boundary bd(connected_spec(0, {-5, 1, 1, 1}));
    CHECK(bd.graphs(1).size() >= 3);
    for (int id : bd.graphs(1)) {
        CHECK(realizable(bd.spec(), bd.info(id).graph));
        CHECK(bd.find(bd.info(id).graph) == id);
    }
}

TEST_CASE("canonical keys ignore labelling") {
    LevelGraph a, b;
    a.vertices = {{0, 0}, {0, 1}};
    a.leg_vertex = {0, 1, 1};
    a.edges = {{0, 1, 2}, {0, 1, 1}};
    b.vertices = {{0, 1}, {0, 0}};
    b.leg_vertex = {1, 0, 0};
    b.edges = {{1, 0, 1}, {1, 0, 2}};
    CHECK(canonicalize(a).key == canonicalize(b).key);
    LevelGraph c = a;
    c.edges[1].kappa = 2;
    CHECK(automorphism_order(c) == 2);
    CHECK(automorphism_order(a) == 1);
}

TEST_CASE("prong data of a triangle") {
    LevelGraph G;
    G.vertices = {{0, 0}, {0, 1}, {0, 2}};
    G.edges = {{0, 1, 2}, {0, 2, 4}, {1, 2, 6}};
    auto pd = prong_data(G);
    CHECK(pd.K == 48);
    CHECK(pd.g == 2);
    // gcd * lcm(a,b) * lcm(b,c) / abc
    CHECK(pd.e * 48 == 2 * 4 * 12);
    CHECK(crossing_edges(G, 1).size() == 2);
    CHECK(crossing_edges(G, 2).size() == 2);
}

TEST_CASE("undegeneration of a three-level graph") {
    Boundary bd(connected_spec(2, {2}));
    int id = bd.graphs(2).front();
    for (int k = 1; k <= 2; ++k) {
        int u = bd.undegenerate_id(id, {k});
        CHECK(bd.info(u).L == 1);
    }
    auto prof = bd.info(id).profile;
    CHECK(prof.size() == 2);
}
