#pragma once

#include "msd/exact.hpp"
#include "msd/strata.hpp"

#include <compare>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace msd {

struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Vertex level is stored as depth: 0 is the top level, depth j is printed as level -j.
struct Vertex {
    int genus = 0;
    int level = 0;
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
    int top = 0;
    int bot = 0;
    int kappa = 1;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Non-horizontal enhanced level graph over an ambient stratum.
/// leg_vertex[p] is the vertex carrying the ambient point with flat id p.
struct LevelGraph {
    std::vector<Vertex> vertices;
    std::vector<int> leg_vertex;
    std::vector<Edge> edges;

    int depth() const;   // L, the number of levels below zero
    friend bool operator==(const LevelGraph&, const LevelGraph&) = default;
};

/// The single-level graph of the ambient stratum (one vertex per component).
LevelGraph trivial_graph(const StratumSpec& B);

enum class HalfKind : int { Leg = 0, EdgeTop = 1, EdgeBot = 2 };

/// A marked point of a level stratum: an ambient leg or an edge end.
struct HalfId {
    HalfKind kind = HalfKind::Leg;
    int id = 0;
    friend auto operator<=>(const HalfId&, const HalfId&) = default;
};

std::string half_label(HalfId h);

struct LevelStratum {
    StratumSpec spec;
    std::vector<HalfId> half;            // per flat point of spec
    std::vector<int> vertex_of_comp;     // graph vertex of each component
    int find(HalfId h) const;            // flat id in spec or -1
};

/// B_Gamma^{[depth]} with induced residue conditions.
LevelStratum level_stratum(const StratumSpec& B, const LevelGraph& G, int depth);

/// Degree and genus invariants; throws InternalError naming the violation.
void check_graph_invariants(const StratumSpec& B, const LevelGraph& G);

/// Emptiness test for a single generalized stratum appearing as a level.
bool level_nonempty(const StratumSpec& level);
/// Full realizability of a graph in B.
bool realizable(const StratumSpec& B, const LevelGraph& G);

struct CanonicalForm {
    LevelGraph graph;
    std::vector<int> vperm;   // old vertex -> canonical vertex
    std::vector<int> eperm;   // old edge -> canonical edge
    std::string key;
    long vertex_automorphisms = 1;
};
CanonicalForm canonicalize(const LevelGraph& G);
long automorphism_order(const LevelGraph& G);
long automorphism_order(const CanonicalForm& cf);
/// All automorphisms as edge permutations (perm[e] = image of e).
std::vector<std::vector<int>> edge_automorphisms(const LevelGraph& G);

struct Undegeneration {
    LevelGraph graph;
    std::vector<int> edge_origin;     // new edge -> edge of the input graph
    std::vector<int> vertex_image;    // input vertex -> new vertex
};
/// delta_I: keep only passages in I (1-based, passage i lies between depths i-1 and i).
Undegeneration undegenerate(const LevelGraph& G, const std::vector<int>& passages);

struct ProngData {
    Integer ell = 1;                  // product of ell_i
    std::vector<Integer> ell_i;       // per passage
    Integer K = 1;
    Integer g = 1;                    // prong-matching classes
    Integer e = 1;                    // [Tw : sTw]
    long aut = 1;
};
/// aut > 0 is taken as the automorphism order instead of recomputing it.
/// Without twists, g and e are left at 0.
ProngData prong_data(const LevelGraph& G, long aut = 0, bool twists = true);
/// Edges crossing passage i (1-based).
std::vector<int> crossing_edges(const LevelGraph& G, int passage);

/// Two-level graphs of a signature, ignoring residue conditions.
struct SigComponent {
    int genus = 0;
    std::vector<int> handles;
    std::vector<int> orders;
};
struct RawGraph {
    std::vector<Vertex> vertices;     // level 0 = upper, 1 = lower
    std::vector<int> handle_vertex;   // indexed like the concatenated handles
    std::vector<Edge> edges;
};
std::vector<RawGraph> raw_two_level_graphs(const std::vector<SigComponent>& sig);

struct GraphInfo {
    LevelGraph graph;                 // canonical
    std::string key;
    int L = 0;
    ProngData prong;                  // g and e not computed, see prong_data
    std::vector<LevelStratum> levels;
    std::vector<DimensionData> level_dims;
    std::vector<int> profile;         // indices into LG_1 numbering
};

/// Boundary catalog of one ambient stratum: LG_L for all L, numbering, profiles.
class Boundary {
public:
    explicit Boundary(StratumSpec B);

    const StratumSpec& spec() const { return B_; }
    const DimensionData& dims() const { return dims_; }

    /// ids of LG_L graphs, sorted by canonical key; L = 0 gives the trivial graph.
    const std::vector<int>& graphs(int L);
    const GraphInfo& info(int id) const { return *infos_[id]; }
    int size() const { return static_cast<int>(infos_.size()); }
    /// id of a graph given in any labelling; -1 when it is not in the catalog.
    int find(const LevelGraph& G);
    int find_key(const std::string& key) const;
    /// Position of an LG_1 graph in the global numbering.
    int lg1_index(int id);
    /// delta_I applied to a catalog graph, returned as a catalog id.
    int undegenerate_id(int id, const std::vector<int>& passages);
    /// LG_L graphs whose profile, as a set, equals the given sorted set.
    const std::vector<int>& with_profile_set(const std::vector<int>& sorted_set);
    int max_levels() const { return dims_.d; }

private:
    int add(LevelGraph G);
    void build(int L);
    void fill_profile(int id);

    StratumSpec B_;
    DimensionData dims_;
    std::vector<std::unique_ptr<GraphInfo>> infos_;
    std::unordered_map<std::string, int> by_key_;
    std::vector<std::vector<int>> by_level_;
    std::map<std::vector<int>, std::vector<int>> by_profile_;
    bool profiles_indexed_ = false;
    int profile_indexed_upto_ = -1;
};

/// LG_1(B) and LG_L(B) as graphs (canonical, sorted by key).
std::vector<LevelGraph> enumerate_LG1(const StratumSpec& B);
std::vector<LevelGraph> enumerate_LGL(const StratumSpec& B, int L);

/// Splits of the bottom level of G that are realizable in B (not deduplicated).
std::vector<LevelGraph> split_bottom_level(const StratumSpec& B, const LevelGraph& G);

/// Per-level (d, N) of a graph.
std::vector<DimensionData> dimension_profile(const StratumSpec& B, const LevelGraph& G);

std::string graph_label(const LevelGraph& G);

}  // namespace msd
