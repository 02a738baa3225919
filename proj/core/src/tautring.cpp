#include "msd/tautring.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace msd {

using nlohmann::json;

int AddGen::decoration_degree() const {
    int s = std::accumulate(xi.begin(), xi.end(), 0) + std::accumulate(L.begin(), L.end(), 0);
    for (const auto& [h, e] : psi) s += e;
    return s;
}

void TautClass::add(const AddGen& g, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms.find(g);
    if (it == terms.end()) {
        terms.emplace(g, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

TautClass& TautClass::operator+=(const TautClass& o) {
    for (const auto& [g, c] : o.terms) add(g, c);
    return *this;
}

TautClass& TautClass::operator-=(const TautClass& o) {
    for (const auto& [g, c] : o.terms) add(g, -c);
    return *this;
}

TautClass& TautClass::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms.clear();
        return *this;
    }
    for (auto& [g, v] : terms) v *= c;
    return *this;
}

// ---------------------------------------------------------------- helpers

namespace {

int trivial_id(Boundary& B) { return B.graphs(0).front(); }

std::vector<int> sorted_profile(const GraphInfo& gi) {
    auto s = gi.profile;
    std::sort(s.begin(), s.end());
    return s;
}

/// Product of two generators on the same graph (exponents add).
AddGen combine(const AddGen& a, const AddGen& b) {
    AddGen r = a;
    for (std::size_t j = 0; j < b.xi.size(); ++j) r.xi[j] += b.xi[j];
    for (std::size_t j = 0; j < b.L.size(); ++j) r.L[j] += b.L[j];
    for (const auto& [h, e] : b.psi) r.psi[h] += e;
    return r;
}

}  // namespace

// ---------------------------------------------------------------- ring

AddGen TautRing::bare(int graph) {
    const auto& gi = B_.info(graph);
    AddGen g;
    g.graph = graph;
    g.xi.assign(gi.L + 1, 0);
    g.L.assign(gi.L + 1, 0);
    return g;
}

int TautRing::degree(const AddGen& g) const { return B_.info(g.graph).L + g.decoration_degree(); }

TautClass TautRing::one() {
    TautClass c;
    c.add(bare(trivial_id(B_)), 1);
    return c;
}

TautClass TautRing::xi() {
    auto g = bare(trivial_id(B_));
    g.xi[0] = 1;
    TautClass c;
    c.add(g, 1);
    return c;
}

TautClass TautRing::psi(int point) {
    if (point < 0 || point >= B_.spec().num_points()) throw ArgumentError("point index out of range");
    auto g = bare(trivial_id(B_));
    g.psi[{HalfKind::Leg, point}] = 1;
    TautClass c;
    c.add(g, 1);
    return c;
}

TautClass TautRing::stratum(int graph) {
    TautClass c;
    c.add(bare(graph), 1);
    return c;
}

TautClass TautRing::xi_as_psi(int q) {
    TautClass c = psi(q) * Rational(B_.spec().order(q) + 1);
    for (int id : B_.graphs(1)) {
        const auto& gi = B_.info(id);
        if (gi.graph.vertices[gi.graph.leg_vertex[q]].level != 1) continue;
        c.add(bare(id), -Rational(gi.prong.ell));
    }
    return c;
}

TautClass TautRing::ell_nu_on(int pi, int k) {
    const auto& gi = B_.info(pi);
    if (k < 1 || k > gi.L) throw ArgumentError("passage index out of range");
    TautClass c;
    auto g = bare(pi);
    g.xi[k - 1] = 1;
    c.add(g, -1);
    g = bare(pi);
    g.L[k - 1] = 1;
    c.add(g, -1);
    g = bare(pi);
    g.xi[k] = 1;
    c.add(g, 1);
    return c;
}

NormalBundleClass TautRing::normal_bundle(int graph, int passage) {
    NormalBundleClass n;
    n.graph = graph;
    n.passage = passage;
    n.ell_nu = ell_nu_on(graph, passage);
    n.nu = n.ell_nu * Rational(Integer(1), B_.info(graph).prong.ell_i[passage - 1]);
    return n;
}

TautClass TautRing::normal_bundle_via_edge(int graph, int edge) {
    const auto& gi = B_.info(graph);
    if (gi.L != 1) throw ArgumentError("edge formula needs a two-level graph");
    if (edge < 0 || edge >= static_cast<int>(gi.graph.edges.size())) throw ArgumentError("edge index out of range");
    const Integer ell = gi.prong.ell;
    TautClass c;
    const Rational kap(Integer(gi.graph.edges[edge].kappa), ell);
    for (auto kind : {HalfKind::EdgeTop, HalfKind::EdgeBot}) {
        auto g = bare(graph);
        g.psi[{kind, edge}] = 1;
        c.add(g, -kap);
    }
    const auto auts = edge_automorphisms(gi.graph);
    for (int hat : B_.graphs(2)) {
        const auto& hi = B_.info(hat);
        for (int b = 1; b <= 2; ++b) {
            auto U = undegenerate(hi.graph, {b});
            auto cf = canonicalize(U.graph);
            if (cf.key != gi.key) continue;
            std::vector<int> inv(cf.eperm.size());
            for (std::size_t k = 0; k < cf.eperm.size(); ++k) inv[cf.eperm[k]] = static_cast<int>(k);
            long hits = 0;
            for (const auto& sigma : auts) {
                int orig = U.edge_origin[inv[sigma[edge]]];
                const auto& e = hi.graph.edges[orig];
                if (hi.graph.vertices[e.top].level == 0 && hi.graph.vertices[e.bot].level == 2) ++hits;
            }
            if (!hits) continue;
            const int a = 3 - b;
            Rational w(Integer(hits), Integer(static_cast<long>(auts.size())));
            c.add(bare(hat), -w * Rational(hi.prong.ell_i[a - 1], ell));
        }
    }
    return c;
}

TautClass TautRing::pullback(const AddGen& g, int pi, const std::vector<int>& passages) {
    const auto& gG = B_.info(g.graph);
    const auto& gP = B_.info(pi);
    auto I = passages;
    std::sort(I.begin(), I.end());
    const int m = static_cast<int>(I.size());
    if (m != gG.L) throw ArgumentError("passage set does not match the depth of the generator");

    // level block of each depth of the generator's graph
    std::vector<int> first(m + 1), last(m + 1);
    for (int j = 0; j <= m; ++j) {
        first[j] = j == 0 ? 0 : I[j - 1];
        last[j] = j == m ? gP.L : I[j] - 1;
    }

    // decorations not involving edges
    TautClass acc;
    {
        auto base = bare(pi);
        for (const auto& [h, e] : g.psi)
            if (h.kind == HalfKind::Leg) base.psi[h] += e;
        for (int j = 0; j <= m; ++j) base.xi[first[j]] += g.xi[j];
        acc.add(base, 1);
    }
    for (int j = 0; j <= m; ++j) {
        const int b = g.L[j];
        if (!b) continue;
        TautClass next;
        for (const auto& [gen, c] : acc.terms) {
            if (first[j] == last[j]) {
                auto h = gen;
                h.L[last[j]] += b;
                next.add(h, c);
                continue;
            }
            // (L_last + xi_last - xi_first)^b
            for (int s = 0; s <= b; ++s)
                for (int t = 0; s + t <= b; ++t) {
                    int u = b - s - t;
                    auto h = gen;
                    h.L[last[j]] += s;
                    h.xi[last[j]] += t;
                    h.xi[first[j]] += u;
                    Rational w(multinomial(b, {s, t, u}));
                    if (u % 2) w = -w;
                    next.add(h, c * w);
                }
        }
        acc = std::move(next);
    }

    bool edge_deco = false;
    for (const auto& [h, e] : g.psi)
        if (h.kind != HalfKind::Leg) edge_deco = true;
    if (!edge_deco) return acc;

    auto U = undegenerate(gP.graph, I);
    auto cf = canonicalize(U.graph);
    if (cf.key != gG.key) throw ArgumentError("graph is not an undegeneration of the target");
    std::vector<int> inv(cf.eperm.size());
    for (std::size_t k = 0; k < cf.eperm.size(); ++k) inv[cf.eperm[k]] = static_cast<int>(k);
    const auto auts = edge_automorphisms(gG.graph);
    const Rational w(Integer(1), Integer(static_cast<long>(auts.size())));
    TautClass out;
    for (const auto& sigma : auts) {
        AddGen edge_part = bare(pi);
        for (const auto& [h, e] : g.psi)
            if (h.kind != HalfKind::Leg) edge_part.psi[{h.kind, U.edge_origin[inv[sigma[h.id]]]}] += e;
        for (const auto& [gen, c] : acc.terms) out.add(combine(gen, edge_part), c * w);
    }
    return out;
}

TautClass TautRing::multiply_on_same_graph(const TautClass& a, const TautClass& b) const {
    TautClass out;
    const int d = B_.dims().d;
    for (const auto& [ga, ca] : a.terms)
        for (const auto& [gb, cb] : b.terms) {
            auto g = combine(ga, gb);
            if (degree(g) > d) continue;
            out.add(g, ca * cb);
        }
    return out;
}

TautClass TautRing::multiply_generators(const AddGen& A, const AddGen& Bg) {
    const int d = B_.dims().d;
    if (degree(A) + degree(Bg) > d) return {};
    const auto& gA = B_.info(A.graph);
    const auto& gB = B_.info(Bg.graph);
    auto SA = sorted_profile(gA), SB = sorted_profile(gB);
    std::vector<int> U;
    std::set_union(SA.begin(), SA.end(), SB.begin(), SB.end(), std::back_inserter(U));
    if (static_cast<int>(U.size()) > d) return {};
    std::vector<int> cands;
    if (U.empty())
        cands.push_back(trivial_id(B_));
    else
        cands = B_.with_profile_set(U);

    TautClass out;
    for (int pi : cands) {
        const auto& gP = B_.info(pi);
        std::vector<int> IA, IB, common;
        for (int i = 1; i <= gP.L; ++i) {
            int p = gP.profile[i - 1];
            bool inA = std::binary_search(SA.begin(), SA.end(), p);
            bool inB = std::binary_search(SB.begin(), SB.end(), p);
            if (inA) IA.push_back(i);
            if (inB) IB.push_back(i);
            if (inA && inB) common.push_back(i);
        }
        if (B_.undegenerate_id(pi, IA) != A.graph || B_.undegenerate_id(pi, IB) != Bg.graph) continue;
        TautClass prod = multiply_on_same_graph(pullback(A, pi, IA), pullback(Bg, pi, IB));
        for (int k : common) {
            auto nu = ell_nu_on(pi, k) * Rational(Integer(1), gP.prong.ell_i[k - 1]);
            prod = multiply_on_same_graph(prod, nu);
        }
        out += prod;
    }
    return out;
}

TautClass TautRing::multiply(const TautClass& a, const TautClass& b) {
    TautClass out;
    for (const auto& [ga, ca] : a.terms)
        for (const auto& [gb, cb] : b.terms) out += multiply_generators(ga, gb) * (ca * cb);
    return out;
}

TautClass TautRing::power(const TautClass& a, int k) {
    if (k < 0) throw ArgumentError("negative power");
    TautClass r = one();
    for (int i = 0; i < k; ++i) r = multiply(r, a);
    return r;
}

TautClass TautRing::degree_part(const TautClass& a, int k) const {
    TautClass out;
    for (const auto& [g, c] : a.terms)
        if (degree(g) == k) out.add(g, c);
    return out;
}

std::string TautRing::describe(const AddGen& g) {
    const auto& gi = B_.info(g.graph);
    std::string s = "D" + std::to_string(g.graph) + graph_label(gi.graph);
    for (std::size_t j = 0; j < g.xi.size(); ++j)
        if (g.xi[j]) s += " xi@" + std::to_string(-static_cast<int>(j)) + "^" + std::to_string(g.xi[j]);
    for (std::size_t j = 0; j < g.L.size(); ++j)
        if (g.L[j]) s += " L@" + std::to_string(-static_cast<int>(j)) + "^" + std::to_string(g.L[j]);
    for (const auto& [h, e] : g.psi) s += " psi_" + half_label(h) + "^" + std::to_string(e);
    return s;
}

std::string TautRing::to_json(const TautClass& c) {
    json arr = json::array();
    for (const auto& [g, v] : c.terms) {
        json psi = json::object();
        for (const auto& [h, e] : g.psi) psi[half_label(h)] = e;
        arr.push_back({{"graph", graph_label(B_.info(g.graph).graph)},
                       {"graph_id", g.graph},
                       {"xi", g.xi},
                       {"L", g.L},
                       {"psi", psi},
                       {"coefficient", v.str()}});
    }
    return arr.dump();
}

// ---------------------------------------------------------------- residue conditions

StratumSpec without_part(const StratumSpec& B, int part) {
    if (part < 0 || part >= static_cast<int>(B.residue_parts.size())) throw ArgumentError("residue part out of range");
    StratumSpec r = B;
    r.residue_parts.erase(r.residue_parts.begin() + part);
    return r;
}

bool part_is_effective(const StratumSpec& B, int part) {
    if (!B.residue_parts.at(part).constrained) return false;
    return residue_subspace_rank(without_part(B, part)) != residue_subspace_rank(B);
}

std::vector<int> residue_removal_graphs(Boundary& B0, const StratumSpec& B, int part) {
    const auto& rp = B.residue_parts.at(part);
    std::vector<int> out;
    for (int id : B0.graphs(1)) {
        const auto& gi = B0.info(id);
        bool all_lower = true;
        for (const auto& pr : rp.points)
            if (gi.graph.vertices[gi.graph.leg_vertex[B.flat(pr)]].level == 0) all_lower = false;
        bool keep = all_lower;
        if (!keep) {
            auto top = level_stratum(B, gi.graph, 0);
            keep = dimension(top.spec).N == gi.level_dims[0].N;
        }
        if (keep) out.push_back(id);
    }
    return out;
}

TautClass remove_residue_condition(TautRing& ring0, const StratumSpec& B, int part) {
    if (!part_is_effective(B, part)) return ring0.one();
    TautClass c = ring0.xi() * Rational(-1);
    for (int id : residue_removal_graphs(ring0.boundary(), B, part))
        c.add(ring0.bare(id), -Rational(ring0.boundary().info(id).prong.ell));
    return c;
}

}  // namespace msd
