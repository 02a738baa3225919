#include "msd/evaluate.hpp"
#include "msd/tautring.hpp"

#include <doctest.h>

using namespace msd;

TEST_CASE("normal bundle from levels and from edges") {
    Evaluator ev;
    for (auto spec : {connected_spec(1, {-3, 1, 2}), connected_spec(1, {-4, 1, 3}), connected_spec(2, {2})}) {
        Boundary& bd = ev.boundary(spec);
        TautRing ring(bd);
        for (int id : bd.graphs(1)) {
            auto nu = ev.integrate(bd, ring.normal_bundle(id, 1).nu);
            for (int e = 0; e < static_cast<int>(bd.info(id).graph.edges.size()); ++e)
                CHECK(ev.integrate(bd, ring.normal_bundle_via_edge(id, e)) == nu);
        }
    }
}

TEST_CASE("self-intersection equals the normal bundle degree") {
    Evaluator ev;
    auto spec = connected_spec(1, {-6, 1, 5});
    Boundary& bd = ev.boundary(spec);
    TautRing ring(bd);
    for (int id : bd.graphs(1)) {
        auto sq = ev.integrate(bd, ring.multiply(ring.stratum(id), ring.stratum(id)));
        CHECK(sq == ev.integrate(bd, ring.normal_bundle(id, 1).nu));
    }
}

TEST_CASE("xi as psi") {
    Evaluator ev;
    auto spec = connected_spec(1, {-3, 1, 2});
    Boundary& bd = ev.boundary(spec);
    TautRing ring(bd);
    auto top = ev.integrate(bd, ring.power(ring.xi(), 2));
    CHECK(top == ev.xi_top(spec));
    for (int p = 0; p < 3; ++p)
        CHECK(ev.integrate(bd, ring.multiply(ring.xi_as_psi(p), ring.xi())) == top);
}

TEST_CASE("products are commutative") {
    Evaluator ev;
    auto spec = connected_spec(0, {1, 1, 2, 2, -8});
    Boundary& bd = ev.boundary(spec);
    TautRing ring(bd);
    const auto& ids = bd.graphs(1);
    REQUIRE(ids.size() >= 2);
    auto a = ring.stratum(ids[0]);
    auto b = ring.multiply(ring.stratum(ids[1]), ring.psi(0));
    CHECK(ev.integrate(bd, ring.multiply(a, b)) == ev.integrate(bd, ring.multiply(b, a)));
}
