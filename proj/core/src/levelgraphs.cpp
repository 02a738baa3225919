#include "msd/levelgraphs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace msd {

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    s.reserve(v.size() * 3);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

// Set partitions of the items whose blocks all pass ok(bitmask of item positions).
template <class Ok, class F>
void for_each_partition_into(int n, Ok&& ok, F&& f) {
    std::vector<int> block(n, 0);
    auto rec = [&](auto& self, unsigned rem, int used) -> void {
        if (rem == 0) {
            f(block, used);
            return;
        }
        const unsigned low = rem & (~rem + 1u);
        const unsigned rest = rem ^ low;
        // every submask of rest, joined with the lowest remaining item
        for (unsigned sub = rest;; sub = (sub - 1) & rest) {
            const unsigned blk = sub | low;
            if (ok(blk)) {
                for (int i = 0; i < n; ++i)
                    if ((blk >> i) & 1u) block[i] = used;
                self(self, rem ^ blk, used + 1);
            }
            if (sub == 0) break;
        }
    };
    rec(rec, n == 0 ? 0u : ((1u << n) - 1u), 0);
}

}  // namespace

int LevelGraph::depth() const {
    int L = 0;
    for (const auto& v : vertices) L = std::max(L, v.level);
    return L;
}

LevelGraph trivial_graph(const StratumSpec& B) {
    LevelGraph G;
    for (const auto& c : B.components) G.vertices.push_back({c.genus, 0});
    for (int p = 0; p < B.num_points(); ++p) G.leg_vertex.push_back(B.comp_of(p));
    return G;
}

std::string half_label(HalfId h) {
    switch (h.kind) {
        case HalfKind::Leg: return "p" + std::to_string(h.id);
        case HalfKind::EdgeTop: return "e" + std::to_string(h.id) + "+";
        case HalfKind::EdgeBot: return "e" + std::to_string(h.id) + "-";
    }
    return "?";
}

int LevelStratum::find(HalfId h) const {
    for (std::size_t i = 0; i < half.size(); ++i)
        if (half[i] == h) return static_cast<int>(i);
    return -1;
}

LevelStratum level_stratum(const StratumSpec& B, const LevelGraph& G, int j) {
    LevelStratum ls;
    const int V = static_cast<int>(G.vertices.size());
    std::vector<std::vector<int>> legs_at(V);
    for (int p = 0; p < static_cast<int>(G.leg_vertex.size()); ++p) legs_at[G.leg_vertex[p]].push_back(p);
    std::map<HalfId, PointRef> where;
    for (int v = 0; v < V; ++v) {
        if (G.vertices[v].level != j) continue;
        int c = static_cast<int>(ls.spec.components.size());
        Component comp{G.vertices[v].genus, {}};
        auto push = [&](HalfId h, int order) {
            where[h] = {c, static_cast<int>(comp.orders.size())};
            comp.orders.push_back(order);
            ls.half.push_back(h);
        };
        for (int p : legs_at[v]) push({HalfKind::Leg, p}, B.order(p));
        for (int e = 0; e < static_cast<int>(G.edges.size()); ++e)
            if (G.edges[e].top == v) push({HalfKind::EdgeTop, e}, G.edges[e].kappa - 1);
        for (int e = 0; e < static_cast<int>(G.edges.size()); ++e)
            if (G.edges[e].bot == v) push({HalfKind::EdgeBot, e}, -G.edges[e].kappa - 1);
        ls.spec.components.push_back(std::move(comp));
        ls.vertex_of_comp.push_back(v);
    }

    // induced conditions from the auxiliary graph above level j
    auto parts = B.constrained_parts();
    const int P = static_cast<int>(parts.size());
    std::vector<int> part_of(B.num_points(), -1);
    for (int k = 0; k < P; ++k)
        for (int p : parts[k]) part_of[p] = k;
    auto lvl = [&](int v) { return G.vertices[v].level; };
    UnionFind uf(V + P);
    for (const auto& e : G.edges)
        if (lvl(e.top) < j && lvl(e.bot) < j) uf.unite(e.top, e.bot);
    for (int k = 0; k < P; ++k)
        for (int p : parts[k])
            if (lvl(G.leg_vertex[p]) < j) uf.unite(V + k, G.leg_vertex[p]);
    std::vector<char> is_free(V + P, 0);
    for (int p = 0; p < static_cast<int>(G.leg_vertex.size()); ++p)
        if (B.order(p) < 0 && part_of[p] < 0 && lvl(G.leg_vertex[p]) < j) is_free[uf.find(G.leg_vertex[p])] = 1;
    std::map<int, std::vector<HalfId>> cond;
    for (int e = 0; e < static_cast<int>(G.edges.size()); ++e)
        if (lvl(G.edges[e].bot) == j && lvl(G.edges[e].top) < j)
            cond[uf.find(G.edges[e].top)].push_back({HalfKind::EdgeBot, e});
    for (int k = 0; k < P; ++k)
        for (int p : parts[k])
            if (lvl(G.leg_vertex[p]) == j) cond[uf.find(V + k)].push_back({HalfKind::Leg, p});
    for (auto& [root, hs] : cond) {
        if (is_free[root] || hs.empty()) continue;
        ResiduePart part;
        for (auto h : hs) part.points.push_back(where.at(h));
        std::sort(part.points.begin(), part.points.end());
        ls.spec.residue_parts.push_back(std::move(part));
    }
    std::sort(ls.spec.residue_parts.begin(), ls.spec.residue_parts.end(),
              [](const ResiduePart& a, const ResiduePart& b) { return a.points < b.points; });
    return ls;
}

void check_graph_invariants(const StratumSpec& B, const LevelGraph& G) {
    const int V = static_cast<int>(G.vertices.size());
    if (static_cast<int>(G.leg_vertex.size()) != B.num_points()) throw InternalError("graph legs do not match ambient");
    std::vector<long> deg(V, 0);
    for (int p = 0; p < B.num_points(); ++p) deg[G.leg_vertex[p]] += B.order(p);
    for (const auto& e : G.edges) {
        if (e.kappa < 1) throw InternalError("edge with non-positive enhancement");
        if (G.vertices[e.top].level >= G.vertices[e.bot].level) throw InternalError("edge does not go down");
        deg[e.top] += e.kappa - 1;
        deg[e.bot] += -e.kappa - 1;
    }
    for (int v = 0; v < V; ++v)
        if (deg[v] != 2L * G.vertices[v].genus - 2)
            throw InternalError("degree condition fails at vertex " + std::to_string(v) + " of " + graph_label(G));
    int L = G.depth();
    std::vector<char> occ(L + 1, 0);
    for (const auto& v : G.vertices) occ[v.level] = 1;
    for (int l = 0; l <= L; ++l)
        if (!occ[l]) throw InternalError("empty level in " + graph_label(G));
    UnionFind uf(V);
    for (const auto& e : G.edges) uf.unite(e.top, e.bot);
    std::map<int, int> comp_of_root;
    for (int p = 0; p < B.num_points(); ++p) {
        int r = uf.find(G.leg_vertex[p]);
        auto it = comp_of_root.find(r);
        if (it == comp_of_root.end())
            comp_of_root[r] = B.comp_of(p);
        else if (it->second != B.comp_of(p))
            throw InternalError("graph joins ambient components in " + graph_label(G));
    }
    std::map<int, std::array<long, 3>> acc;   // genus sum, vertices, edges
    for (int v = 0; v < V; ++v) {
        auto it = comp_of_root.find(uf.find(v));
        if (it == comp_of_root.end()) throw InternalError("graph component without legs in " + graph_label(G));
        acc[it->second][0] += G.vertices[v].genus;
        acc[it->second][1] += 1;
    }
    for (const auto& e : G.edges) acc[comp_of_root[uf.find(e.top)]][2] += 1;
    for (int c = 0; c < static_cast<int>(B.components.size()); ++c) {
        auto a = acc[c];
        if (a[0] + a[2] - a[1] + 1 != B.components[c].genus)
            throw InternalError("genus mismatch on component " + std::to_string(c) + " of " + graph_label(G));
    }
}

bool level_nonempty(const StratumSpec& S) {
    for (const auto& c : S.components)
        if (2 * c.genus - 2 + static_cast<int>(c.orders.size()) <= 0) return false;
    if (dimension(S).N < 1) return false;
    auto forced = forced_zero_poles(S);
    std::vector<char> fz(S.num_points(), 0);
    for (int p : forced) fz[p] = 1;
    for (int p = 0; p < S.num_points(); ++p)
        if (S.order(p) == -1 && fz[p]) return false;
    for (int c = 0; c < static_cast<int>(S.components.size()); ++c) {
        if (S.components[c].genus != 0) continue;
        bool all_zero = true;
        long b_sum = 0, n_poles = 0, max_zero = 0;
        for (int p : S.points_of(c)) {
            int m = S.order(p);
            if (m < 0) {
                if (!fz[p]) all_zero = false;
                b_sum += -m;
                ++n_poles;
            } else {
                max_zero = std::max<long>(max_zero, m);
            }
        }
        // exact differentials on P^1: every zero order must be at most sum(b) - #poles - 1
        if (all_zero && max_zero > b_sum - n_poles - 1) return false;
    }
    return true;
}

std::vector<DimensionData> dimension_profile(const StratumSpec& B, const LevelGraph& G) {
    std::vector<DimensionData> out;
    for (int j = 0; j <= G.depth(); ++j) out.push_back(dimension(level_stratum(B, G, j).spec));
    return out;
}

bool realizable(const StratumSpec& B, const LevelGraph& G) {
    check_graph_invariants(B, G);
    int total = 0;
    for (int j = 0; j <= G.depth(); ++j) {
        auto ls = level_stratum(B, G, j);
        if (!level_nonempty(ls.spec)) return false;
        total += dimension(ls.spec).N;
    }
    if (total != dimension(B).N)
        throw InternalError("level dimensions of " + graph_label(G) + " sum to " + std::to_string(total) +
                            ", ambient N = " + std::to_string(dimension(B).N));
    return true;
}

// ---------------------------------------------------------------- canonical form

namespace {

struct LabelSearch {
    const LevelGraph& G;
    std::vector<std::vector<int>> classes;   // vertex classes in canonical color order
    std::vector<int> best;                   // encoding
    std::vector<std::vector<int>> best_orders;

    explicit LabelSearch(const LevelGraph& g) : G(g) {}

    std::vector<int> encode(const std::vector<int>& order) const {
        const int V = static_cast<int>(G.vertices.size());
        std::vector<int> pos(V);
        for (int i = 0; i < V; ++i) pos[order[i]] = i;
        std::vector<int> enc;
        enc.reserve(3 + 2 * V + G.leg_vertex.size() + 3 * G.edges.size());
        enc.push_back(V);
        enc.push_back(static_cast<int>(G.edges.size()));
        for (int i = 0; i < V; ++i) {
            enc.push_back(G.vertices[order[i]].level);
            enc.push_back(G.vertices[order[i]].genus);
        }
        for (int v : G.leg_vertex) enc.push_back(pos[v]);
        std::vector<std::array<int, 3>> es;
        for (const auto& e : G.edges) es.push_back({pos[e.top], pos[e.bot], e.kappa});
        std::sort(es.begin(), es.end());
        for (const auto& e : es) enc.insert(enc.end(), e.begin(), e.end());
        return enc;
    }

    void run() {
        std::vector<int> order;
        std::vector<std::vector<int>> perms = classes;
        std::function<void(std::size_t)> rec = [&](std::size_t c) {
            if (c == perms.size()) {
                auto enc = encode(order);
                if (best_orders.empty() || enc < best) {
                    best = std::move(enc);
                    best_orders.assign(1, order);
                } else if (enc == best) {
                    best_orders.push_back(order);
                }
                return;
            }
            auto members = perms[c];
            std::sort(members.begin(), members.end());
            do {
                order.insert(order.end(), members.begin(), members.end());
                rec(c + 1);
                order.resize(order.size() - members.size());
            } while (std::next_permutation(members.begin(), members.end()));
        };
        rec(0);
    }
};

LabelSearch run_label_search(const LevelGraph& G) {
    const int V = static_cast<int>(G.vertices.size());
    std::vector<std::vector<int>> legs(V);
    for (int p = 0; p < static_cast<int>(G.leg_vertex.size()); ++p) legs[G.leg_vertex[p]].push_back(p);
    std::vector<std::vector<int>> sig(V);
    for (int v = 0; v < V; ++v) {
        sig[v] = {G.vertices[v].level, G.vertices[v].genus, static_cast<int>(legs[v].size())};
        sig[v].insert(sig[v].end(), legs[v].begin(), legs[v].end());
    }
    auto rank = [&](const std::vector<std::vector<int>>& s) {
        std::vector<std::vector<int>> u = s;
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        std::vector<int> col(V);
        for (int v = 0; v < V; ++v) col[v] = static_cast<int>(std::lower_bound(u.begin(), u.end(), s[v]) - u.begin());
        return std::make_pair(col, static_cast<int>(u.size()));
    };
    auto [color, ncol] = rank(sig);
    while (true) {
        std::vector<std::vector<int>> s(V);
        for (int v = 0; v < V; ++v) {
            std::vector<std::array<int, 3>> inc;
            for (const auto& e : G.edges) {
                if (e.top == v) inc.push_back({0, e.kappa, color[e.bot]});
                if (e.bot == v) inc.push_back({1, e.kappa, color[e.top]});
            }
            std::sort(inc.begin(), inc.end());
            s[v] = {color[v]};
            for (const auto& x : inc) s[v].insert(s[v].end(), x.begin(), x.end());
        }
        auto [c2, n2] = rank(s);
        color = c2;
        if (n2 == ncol) break;
        ncol = n2;
    }
    LabelSearch ls(G);
    ls.classes.assign(ncol, {});
    for (int v = 0; v < V; ++v) ls.classes[color[v]].push_back(v);
    long total = 1;
    for (const auto& c : ls.classes)
        for (long k = 2; k <= static_cast<long>(c.size()); ++k) {
            total *= k;
            if (total > 5000000) throw InternalError("canonical labelling search too large for " + graph_label(G));
        }
    ls.run();
    return ls;
}

}  // namespace

CanonicalForm canonicalize(const LevelGraph& G) {
    auto ls = run_label_search(G);
    const auto& order = ls.best_orders.front();
    const int V = static_cast<int>(G.vertices.size());
    CanonicalForm cf;
    cf.vperm.assign(V, 0);
    for (int i = 0; i < V; ++i) cf.vperm[order[i]] = i;
    for (int i = 0; i < V; ++i) cf.graph.vertices.push_back(G.vertices[order[i]]);
    for (int v : G.leg_vertex) cf.graph.leg_vertex.push_back(cf.vperm[v]);
    std::vector<int> eidx(G.edges.size());
    std::iota(eidx.begin(), eidx.end(), 0);
    auto image = [&](int e) {
        return std::array<int, 3>{cf.vperm[G.edges[e].top], cf.vperm[G.edges[e].bot], G.edges[e].kappa};
    };
    std::stable_sort(eidx.begin(), eidx.end(), [&](int a, int b) { return image(a) < image(b); });
    cf.eperm.assign(G.edges.size(), 0);
    for (std::size_t k = 0; k < eidx.size(); ++k) {
        cf.eperm[eidx[k]] = static_cast<int>(k);
        auto im = image(eidx[k]);
        cf.graph.edges.push_back({im[0], im[1], im[2]});
    }
    cf.key = join_ints(ls.best);
    cf.vertex_automorphisms = static_cast<long>(ls.best_orders.size());
    return cf;
}

long automorphism_order(const LevelGraph& G) { return automorphism_order(canonicalize(G)); }

long automorphism_order(const CanonicalForm& cf) {
    long a = cf.vertex_automorphisms;
    std::map<std::array<int, 3>, long> mult;
    for (const auto& e : cf.graph.edges) ++mult[{e.top, e.bot, e.kappa}];
    for (const auto& [k, m] : mult)
        for (long i = 2; i <= m; ++i) a *= i;
    return a;
}

std::vector<std::vector<int>> edge_automorphisms(const LevelGraph& G) {
    auto ls = run_label_search(G);
    const int V = static_cast<int>(G.vertices.size());
    const auto& ref = ls.best_orders.front();
    std::vector<std::vector<int>> out;
    for (const auto& ord : ls.best_orders) {
        std::vector<int> pos(V);
        for (int i = 0; i < V; ++i) pos[ord[i]] = i;
        std::vector<int> sigma(V);
        for (int v = 0; v < V; ++v) sigma[v] = ref[pos[v]];
        // group edges by endpoint/kappa class; sigma maps class to class
        std::map<std::array<int, 3>, std::vector<int>> cls;
        for (int e = 0; e < static_cast<int>(G.edges.size()); ++e)
            cls[{G.edges[e].top, G.edges[e].bot, G.edges[e].kappa}].push_back(e);
        std::vector<std::pair<std::vector<int>, std::vector<int>>> blocks;
        for (const auto& [k, src] : cls) {
            auto tgt = cls.at({sigma[k[0]], sigma[k[1]], k[2]});
            blocks.push_back({src, tgt});
        }
        std::vector<int> perm(G.edges.size(), -1);
        std::function<void(std::size_t)> rec = [&](std::size_t b) {
            if (b == blocks.size()) {
                out.push_back(perm);
                return;
            }
            auto tgt = blocks[b].second;
            std::sort(tgt.begin(), tgt.end());
            do {
                for (std::size_t i = 0; i < tgt.size(); ++i) perm[blocks[b].first[i]] = tgt[i];
                rec(b + 1);
            } while (std::next_permutation(tgt.begin(), tgt.end()));
        };
        rec(0);
    }
    return out;
}

// ---------------------------------------------------------------- undegeneration

Undegeneration undegenerate(const LevelGraph& G, const std::vector<int>& passages) {
    const int V = static_cast<int>(G.vertices.size());
    const int L = G.depth();
    std::vector<char> keep(L + 1, 0);
    for (int i : passages) {
        if (i < 1 || i > L) throw ArgumentError("passage index out of range");
        keep[i] = 1;
    }
    std::vector<int> newlevel(L + 1, 0);
    for (int j = 1; j <= L; ++j) newlevel[j] = newlevel[j - 1] + (keep[j] ? 1 : 0);
    auto crosses_kept = [&](const Edge& e) {
        for (int i = G.vertices[e.top].level + 1; i <= G.vertices[e.bot].level; ++i)
            if (keep[i]) return true;
        return false;
    };
    UnionFind uf(V);
    for (const auto& e : G.edges)
        if (!crosses_kept(e)) uf.unite(e.top, e.bot);
    std::map<int, int> root_index;
    Undegeneration u;
    u.vertex_image.assign(V, -1);
    for (int v = 0; v < V; ++v) {
        int r = uf.find(v);
        auto it = root_index.find(r);
        if (it == root_index.end()) {
            int idx = static_cast<int>(u.graph.vertices.size());
            root_index[r] = idx;
            u.graph.vertices.push_back({0, newlevel[G.vertices[v].level]});
        }
    }
    std::vector<long> gsum(u.graph.vertices.size(), 0), vcount(u.graph.vertices.size(), 0),
        ecount(u.graph.vertices.size(), 0);
    for (int v = 0; v < V; ++v) {
        int n = root_index[uf.find(v)];
        u.vertex_image[v] = n;
        gsum[n] += G.vertices[v].genus;
        vcount[n] += 1;
    }
    for (int e = 0; e < static_cast<int>(G.edges.size()); ++e) {
        const auto& ed = G.edges[e];
        if (crosses_kept(ed)) {
            u.graph.edges.push_back({u.vertex_image[ed.top], u.vertex_image[ed.bot], ed.kappa});
            u.edge_origin.push_back(e);
        } else {
            ecount[u.vertex_image[ed.top]] += 1;
        }
    }
    for (std::size_t n = 0; n < u.graph.vertices.size(); ++n)
        u.graph.vertices[n].genus = static_cast<int>(gsum[n] + ecount[n] - vcount[n] + 1);
    for (int v : G.leg_vertex) u.graph.leg_vertex.push_back(u.vertex_image[v]);
    return u;
}

// ---------------------------------------------------------------- prong data

std::vector<int> crossing_edges(const LevelGraph& G, int i) {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(G.edges.size()); ++e)
        if (G.vertices[G.edges[e].top].level <= i - 1 && G.vertices[G.edges[e].bot].level >= i) out.push_back(e);
    return out;
}

ProngData prong_data(const LevelGraph& G, long aut, bool twists) {
    ProngData pd;
    const int L = G.depth();
    std::vector<long> moduli;
    for (const auto& e : G.edges) {
        moduli.push_back(e.kappa);
        pd.K *= e.kappa;
    }
    std::vector<std::vector<int>> rows;
    IntegerMatrix stw(L, std::vector<std::vector<long>>{});
    for (int i = 1; i <= L; ++i) {
        auto cr = crossing_edges(G, i);
        std::vector<long> ks;
        std::vector<int> row(G.edges.size(), 0);
        for (int e : cr) {
            ks.push_back(G.edges[e].kappa);
            row[e] = 1;
        }
        Integer li = ks.empty() ? Integer(1) : lcm_list(ks);
        pd.ell_i.push_back(li);
        pd.ell *= li;
        rows.push_back(row);
        std::vector<Integer> srow(L, 0);
        srow[i - 1] = li;
        stw.add_row(srow);
    }
    pd.aut = aut > 0 ? aut : automorphism_order(G);
    if (!twists) {
        pd.g = 0;
        pd.e = 0;
        return pd;
    }
    pd.g = moduli.empty() ? Integer(1) : orbit_count(moduli, rows);
    // [R : Tw] = K / g and [R : sTw] = prod ell_i
    Integer r_tw = pd.K / pd.g;
    Integer r_stw = L == 0 ? Integer(1) : *lattice_index(L, stw);
    if (r_stw % r_tw != 0) throw InternalError("twist group index is not integral for " + graph_label(G));
    pd.e = r_stw / r_tw;
    return pd;
}

// ---------------------------------------------------------------- enumeration

namespace {

struct CompOption {
    std::vector<Vertex> vertices;           // level 0/1
    std::vector<int> item_vertex;           // per item of the component
    std::vector<Edge> edges;
};

/// Edge multisets between top and bottom vertices with prescribed order sums:
/// sum of (kappa - 1) at top v is T[v], sum of (kappa + 1) at bottom w is S[w], E edges in total.
struct EdgePlacement {
    int ntop, nbot, E;
    std::vector<long> remT, S;
    std::vector<Edge> edges;
    std::vector<int> tdeg, bdeg;
    std::vector<long> later_S;   // sum of S over bottoms after w
    std::function<void(const std::vector<Edge>&, const std::vector<int>&, const std::vector<int>&)> emit;

    EdgePlacement(int nt, int nb, int e, std::vector<long> T, std::vector<long> Sb)
        : ntop(nt), nbot(nb), E(e), remT(std::move(T)), S(std::move(Sb)), tdeg(nt, 0), bdeg(nb, 0) {
        later_S.assign(nbot + 1, 0);
        for (int w = nbot - 1; w >= 0; --w) later_S[w] = later_S[w + 1] + S[w];
    }

    template <class F>
    void run(F&& f) {
        for (long t : remT)
            if (t < 0) return;
        for (long x : S)
            if (x < 2) return;
        emit = std::forward<F>(f);
        if (nbot > 0) place(0, S[0], 0, 1);
    }

    // lower and upper bounds on the number of edges still to place
    bool feasible(int w, long remS, int lastv) const {
        const int R = E - static_cast<int>(edges.size());
        if (R < 0) return false;
        int need_top = 0;
        for (int v = 0; v < ntop; ++v)
            if (tdeg[v] == 0 || remT[v] > 0) {
                ++need_top;
                // tops before lastv are only reachable from later bottoms
                if (v < lastv && w + 1 >= nbot) return false;
            }
        const int later = nbot - w - 1;
        const int need_bot = (remS > 0 ? 1 : 0) + later;
        if (R < need_top || R < need_bot) return false;
        if (R > remS / 2 + later_S[w + 1] / 2) return false;
        return true;
    }

    void place(int w, long remS, int lastv, int lastk) {
        if (w == nbot) {
            if (static_cast<int>(edges.size()) != E) return;
            for (int v = 0; v < ntop; ++v)
                if (remT[v] != 0 || tdeg[v] == 0) return;
            emit(edges, tdeg, bdeg);
            return;
        }
        if (!feasible(w, remS, lastv)) return;
        if (remS == 0) {
            place(w + 1, w + 1 < nbot ? S[w + 1] : 0, 0, 1);
            return;
        }
        if (remS < 2) return;
        for (int v = lastv; v < ntop; ++v) {
            int k0 = (v == lastv) ? lastk : 1;
            for (int k = k0; k + 1 <= remS; ++k) {
                if (k - 1 > remT[v]) break;
                long rest = remS - (k + 1);
                if (rest == 1) continue;
                edges.push_back({v, ntop + w, k});
                remT[v] -= k - 1;
                tdeg[v]++;
                bdeg[w]++;
                place(w, rest, v, k);
                remT[v] += k - 1;
                tdeg[v]--;
                bdeg[w]--;
                edges.pop_back();
            }
        }
    }
};

void component_splits(int g, const std::vector<int>& m, std::vector<CompOption>& out) {
    const int n = static_cast<int>(m.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> T, Bt;
        for (int i = 0; i < n; ++i) ((mask >> i) & 1u ? T : Bt).push_back(i);
        if (Bt.empty()) continue;
        auto sum_of = [&](const std::vector<int>& items, unsigned blk) {
            long t = 0;
            for (std::size_t i = 0; i < items.size(); ++i)
                if ((blk >> i) & 1u) t += m[items[i]];
            return t;
        };
        auto bottom_ok = [&](unsigned blk) { return sum_of(Bt, blk) >= 0; };
        auto top_ok = [&](unsigned blk) { return sum_of(T, blk) + 2 <= 2L * g; };
        for_each_partition_into(static_cast<int>(Bt.size()), bottom_ok, [&](const std::vector<int>& bb, int nb) {
            std::vector<long> SB(nb, 0);
            std::vector<int> bcount(nb, 0);
            for (std::size_t k = 0; k < Bt.size(); ++k) {
                SB[bb[k]] += m[Bt[k]];
                bcount[bb[k]]++;
            }
            for (long s : SB)
                if (s < 0) return;
            auto top_partitions = [&](auto&& f) {
                if (T.empty())
                    f(std::vector<int>{}, 0);
                else
                    for_each_partition_into(static_cast<int>(T.size()), top_ok, f);
            };
            top_partitions([&](const std::vector<int>& tb, int nt) {
                std::vector<long> ST(nt, 0);
                std::vector<int> tcount(nt, 0);
                for (std::size_t k = 0; k < T.size(); ++k) {
                    ST[tb[k]] += m[T[k]];
                    tcount[tb[k]]++;
                }
                std::vector<int> gmin(nt);
                long base = 0;
                for (int v = 0; v < nt; ++v) {
                    long lo = ST[v] + 2;   // 2 g_v >= ST_v + 2
                    gmin[v] = lo > 0 ? static_cast<int>((lo + 1) / 2) : 0;
                    base += gmin[v];
                }
                if (base > g) return;
                for (int s0 = 0; s0 + base <= g; ++s0) {
                    const int ntop = nt + s0, nbot = nb;
                    const int Vn = ntop + nbot;
                    std::vector<int> gen(Vn, 0);
                    // genus assignment: tops [0,nt), empty tops [nt,ntop) nonincreasing >= 1, bottoms
                    auto assign = [&](auto& self, int idx, int used) -> void {
                        if (idx == Vn) {
                            int E = Vn - 1 + (g - used);
                            std::vector<long> Tb(ntop), Sb(nbot);
                            for (int v = 0; v < ntop; ++v) Tb[v] = 2L * gen[v] - 2 - (v < nt ? ST[v] : 0);
                            for (int w = 0; w < nbot; ++w) Sb[w] = SB[w] - 2L * gen[ntop + w] + 2;
                            EdgePlacement ep{ntop, nbot, E, Tb, Sb};
                            ep.run([&](const std::vector<Edge>& edges, const std::vector<int>& tdeg,
                                       const std::vector<int>& bdeg) {
                                for (int v = 0; v < ntop; ++v)
                                    if (2 * gen[v] - 2 + (v < nt ? tcount[v] : 0) + tdeg[v] <= 0) return;
                                for (int w2 = 0; w2 < nbot; ++w2)
                                    if (2 * gen[ntop + w2] - 2 + bcount[w2] + bdeg[w2] <= 0) return;
                                UnionFind uf(Vn);
                                for (const auto& e : edges) uf.unite(e.top, e.bot);
                                for (int v = 1; v < Vn; ++v)
                                    if (uf.find(v) != uf.find(0)) return;
                                CompOption opt;
                                for (int v = 0; v < ntop; ++v) opt.vertices.push_back({gen[v], 0});
                                for (int w2 = 0; w2 < nbot; ++w2) opt.vertices.push_back({gen[ntop + w2], 1});
                                opt.item_vertex.assign(n, -1);
                                for (std::size_t k = 0; k < T.size(); ++k) opt.item_vertex[T[k]] = tb[k];
                                for (std::size_t k = 0; k < Bt.size(); ++k) opt.item_vertex[Bt[k]] = ntop + bb[k];
                                opt.edges = edges;
                                out.push_back(std::move(opt));
                            });
                            return;
                        }
                        int lo, hi;
                        if (idx < nt) {
                            lo = gmin[idx];
                            hi = g - used;
                        } else if (idx < ntop) {
                            lo = 1;
                            hi = (idx > nt) ? gen[idx - 1] : g - used;
                            hi = std::min(hi, g - used);
                        } else {
                            lo = 0;
                            hi = static_cast<int>(std::min<long>(SB[idx - ntop] / 2, g - used));
                        }
                        // reserve the minima of later top vertices
                        int later = 0;
                        for (int k = idx + 1; k < ntop; ++k) later += (k < nt ? gmin[k] : 1);
                        for (int x = lo; x <= hi && used + x + later <= g; ++x) {
                            gen[idx] = x;
                            self(self, idx + 1, used + x);
                        }
                    };
                    assign(assign, 0, 0);
                }
            });
        });
    }
}

}  // namespace

std::vector<RawGraph> raw_two_level_graphs(const std::vector<SigComponent>& sig) {
    std::vector<std::vector<CompOption>> options(sig.size());
    for (std::size_t c = 0; c < sig.size(); ++c) {
        const auto& comp = sig[c];
        const int n = static_cast<int>(comp.orders.size());
        CompOption top, bot;
        top.vertices = {{comp.genus, 0}};
        top.item_vertex.assign(n, 0);
        bot.vertices = {{comp.genus, 1}};
        bot.item_vertex.assign(n, 0);
        options[c].push_back(top);
        options[c].push_back(bot);
        component_splits(comp.genus, comp.orders, options[c]);
    }
    std::vector<RawGraph> out;
    std::vector<int> choice(sig.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
        if (c == sig.size()) {
            RawGraph rg;
            bool has_top = false, has_bot = false;
            for (std::size_t k = 0; k < sig.size(); ++k) {
                const auto& opt = options[k][choice[k]];
                int off = static_cast<int>(rg.vertices.size());
                for (const auto& v : opt.vertices) {
                    rg.vertices.push_back(v);
                    (v.level == 0 ? has_top : has_bot) = true;
                }
                for (int iv : opt.item_vertex) rg.handle_vertex.push_back(off + iv);
                for (const auto& e : opt.edges) rg.edges.push_back({off + e.top, off + e.bot, e.kappa});
            }
            if (has_top && has_bot) out.push_back(std::move(rg));
            return;
        }
        for (std::size_t k = 0; k < options[c].size(); ++k) {
            choice[c] = static_cast<int>(k);
            rec(c + 1);
        }
    };
    rec(0);
    return out;
}

namespace {

std::vector<SigComponent> signature_of(const StratumSpec& S) {
    std::vector<SigComponent> sig;
    for (int c = 0; c < static_cast<int>(S.components.size()); ++c) {
        SigComponent sc;
        sc.genus = S.components[c].genus;
        sc.orders = S.components[c].orders;
        sc.handles = S.points_of(c);
        sig.push_back(std::move(sc));
    }
    return sig;
}

}  // namespace

std::vector<LevelGraph> split_bottom_level(const StratumSpec& B, const LevelGraph& G) {
    const int D = G.depth();
    auto ls = level_stratum(B, G, D);
    auto raws = raw_two_level_graphs(signature_of(ls.spec));
    std::vector<LevelGraph> out;
    // levels above the bottom are unchanged by the split
    int upper_N = 0;
    for (int j = 0; j < D; ++j) upper_N += dimension(level_stratum(B, G, j).spec).N;
    const int ambient_N = dimension(B).N;
    // vertices above the bottom keep their indices
    std::vector<int> keep_index(G.vertices.size(), -1);
    LevelGraph base;
    for (int v = 0; v < static_cast<int>(G.vertices.size()); ++v)
        if (G.vertices[v].level < D) {
            keep_index[v] = static_cast<int>(base.vertices.size());
            base.vertices.push_back(G.vertices[v]);
        }
    for (const auto& rg : raws) {
        LevelGraph H = base;
        const int off = static_cast<int>(H.vertices.size());
        for (const auto& v : rg.vertices) H.vertices.push_back({v.genus, D + v.level});
        H.leg_vertex.assign(G.leg_vertex.size(), -1);
        for (int p = 0; p < static_cast<int>(G.leg_vertex.size()); ++p)
            if (keep_index[G.leg_vertex[p]] >= 0) H.leg_vertex[p] = keep_index[G.leg_vertex[p]];
        for (const auto& e : G.edges) {
            Edge ne = e;
            ne.top = keep_index[e.top];
            ne.bot = keep_index[e.bot];
            H.edges.push_back(ne);
        }
        for (int f = 0; f < static_cast<int>(ls.half.size()); ++f) {
            HalfId h = ls.half[f];
            int nv = off + rg.handle_vertex[f];
            if (h.kind == HalfKind::Leg)
                H.leg_vertex[h.id] = nv;
            else if (h.kind == HalfKind::EdgeBot)
                H.edges[h.id].bot = nv;
            else
                throw InternalError("bottom level carries an upper edge end");
        }
        for (const auto& e : rg.edges) H.edges.push_back({off + e.top, off + e.bot, e.kappa});
        check_graph_invariants(B, H);
        int total = upper_N;
        bool ok = true;
        for (int j = D; j <= D + 1 && ok; ++j) {
            auto lj = level_stratum(B, H, j);
            ok = level_nonempty(lj.spec);
            if (ok) total += dimension(lj.spec).N;
        }
        if (!ok) continue;
        if (total != ambient_N)
            throw InternalError("level dimensions of " + graph_label(H) + " sum to " + std::to_string(total) +
                                ", ambient N = " + std::to_string(ambient_N));
        out.push_back(std::move(H));
    }
    return out;
}

std::vector<LevelGraph> enumerate_LG1(const StratumSpec& B) { return split_bottom_level(B, trivial_graph(B)); }

// ---------------------------------------------------------------- catalog

Boundary::Boundary(StratumSpec B) : B_(std::move(B)), dims_(dimension(B_)) {
    require_valid(B_);
    by_level_.push_back({});
    by_level_[0].push_back(add(trivial_graph(B_)));
}

int Boundary::add(LevelGraph G) {
    auto cf = canonicalize(G);
    auto it = by_key_.find(cf.key);
    if (it != by_key_.end()) return it->second;
    const long aut = automorphism_order(cf);
    auto gi = std::make_unique<GraphInfo>();
    gi->graph = std::move(cf.graph);
    gi->key = cf.key;
    gi->L = gi->graph.depth();
    gi->prong = prong_data(gi->graph, aut, false);
    for (int j = 0; j <= gi->L; ++j) {
        gi->levels.push_back(level_stratum(B_, gi->graph, j));
        gi->level_dims.push_back(dimension(gi->levels.back().spec));
    }
    int id = static_cast<int>(infos_.size());
    infos_.push_back(std::move(gi));
    by_key_[infos_.back()->key] = id;
    return id;
}

const std::vector<int>& Boundary::graphs(int L) {
    static const std::vector<int> empty;
    if (L < 0) return empty;
    while (static_cast<int>(by_level_.size()) <= L) {
        int next = static_cast<int>(by_level_.size());
        if (next > dims_.d || (next > 1 && by_level_[next - 1].empty())) {
            by_level_.push_back({});
            continue;
        }
        build(next);
    }
    return by_level_[L];
}

void Boundary::build(int L) {
    std::vector<int> ids;
    std::set<int> seen;
    for (int src : by_level_[L - 1]) {
        for (auto& H : split_bottom_level(B_, infos_[src]->graph)) {
            int id = add(std::move(H));
            if (seen.insert(id).second) ids.push_back(id);
        }
    }
    std::sort(ids.begin(), ids.end(), [&](int a, int b) { return infos_[a]->key < infos_[b]->key; });
    by_level_.push_back(ids);
    for (int id : ids) fill_profile(id);
}

void Boundary::fill_profile(int id) {
    auto& gi = *infos_[id];
    gi.profile.clear();
    if (gi.L == 1) {
        gi.profile.push_back(lg1_index(id));
        return;
    }
    for (int i = 1; i <= gi.L; ++i) {
        auto u = undegenerate(gi.graph, {i});
        auto cf = canonicalize(u.graph);
        int j = find_key(cf.key);
        if (j < 0 || infos_[j]->L != 1)
            throw InternalError("undegeneration of " + graph_label(gi.graph) + " is not in LG_1");
        gi.profile.push_back(lg1_index(j));
    }
    std::vector<int> s = gi.profile;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw InternalError("profile with a repeated index for " + graph_label(gi.graph));
}

int Boundary::find(const LevelGraph& G) { return find_key(canonicalize(G).key); }

int Boundary::find_key(const std::string& key) const {
    auto it = by_key_.find(key);
    return it == by_key_.end() ? -1 : it->second;
}

int Boundary::lg1_index(int id) {
    const auto& lg1 = graphs(1);
    auto it = std::find(lg1.begin(), lg1.end(), id);
    if (it == lg1.end()) throw InternalError("graph is not two-level");
    return static_cast<int>(it - lg1.begin());
}

int Boundary::undegenerate_id(int id, const std::vector<int>& passages) {
    auto u = undegenerate(infos_[id]->graph, passages);
    int j = find(u.graph);
    if (j < 0) throw InternalError("undegeneration missing from the catalog");
    return j;
}

const std::vector<int>& Boundary::with_profile_set(const std::vector<int>& sorted_set) {
    static const std::vector<int> empty;
    int L = static_cast<int>(sorted_set.size());
    if (L > dims_.d) return empty;
    for (int l = 1; l <= L; ++l) {
        const auto& ids = graphs(l);
        if (l > profile_indexed_upto_) {
            for (int id : ids) {
                auto s = infos_[id]->profile;
                std::sort(s.begin(), s.end());
                by_profile_[s].push_back(id);
            }
            profile_indexed_upto_ = l;
        }
    }
    auto it = by_profile_.find(sorted_set);
    return it == by_profile_.end() ? empty : it->second;
}

std::vector<LevelGraph> enumerate_LGL(const StratumSpec& B, int L) {
    Boundary bd(B);
    std::vector<LevelGraph> out;
    for (int id : bd.graphs(L)) out.push_back(bd.info(id).graph);
    return out;
}

std::string graph_label(const LevelGraph& G) {
    std::string s = "[";
    for (std::size_t v = 0; v < G.vertices.size(); ++v) {
        if (v) s += " ";
        s += "v" + std::to_string(v) + ":g" + std::to_string(G.vertices[v].genus) + "@" +
             std::to_string(-G.vertices[v].level) + "{";
        bool first = true;
        for (std::size_t p = 0; p < G.leg_vertex.size(); ++p)
            if (G.leg_vertex[p] == static_cast<int>(v)) {
                if (!first) s += ",";
                s += std::to_string(p);
                first = false;
            }
        s += "}";
    }
    s += " |";
    for (const auto& e : G.edges)
        s += " " + std::to_string(e.top) + "-" + std::to_string(e.bot) + ":" + std::to_string(e.kappa);
    return s + "]";
}

}  // namespace msd
