#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace msd {

struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Component {
    int genus = 0;
    std::vector<int> orders;
    friend bool operator==(const Component&, const Component&) = default;
};

/// (component index, position) of a marked point.
struct PointRef {
    int comp = 0;
    int idx = 0;
    friend auto operator<=>(const PointRef&, const PointRef&) = default;
};

struct ResiduePart {
    std::vector<PointRef> points;
    bool constrained = true;
    friend bool operator==(const ResiduePart&, const ResiduePart&) = default;
};

/// A generalized stratum: components plus a residue-condition partition.
struct StratumSpec {
    std::vector<Component> components;
    std::vector<ResiduePart> residue_parts;

    int num_points() const;
    int flat(PointRef p) const;
    PointRef ref(int flat) const;
    int order(int flat) const;
    int comp_of(int flat) const;
    /// flat ids of the points of component c
    std::vector<int> points_of(int c) const;
    bool connected() const { return components.size() == 1; }
    bool has_constraints() const;
    /// Parts carrying a condition, as lists of flat point ids.
    std::vector<std::vector<int>> constrained_parts() const;

    friend bool operator==(const StratumSpec&, const StratumSpec&) = default;
};

enum class Kind { Holomorphic, Meromorphic };

struct Validation {
    bool ok = true;
    std::string diagnostic;
    std::vector<Kind> kinds;
};

Validation validate(const StratumSpec& spec);
/// Throws SpecError with the diagnostic.
void require_valid(const StratumSpec& spec);

struct DimensionData {
    int N = 0;              // unprojectivized
    int d = 0;              // projectivized
    int residue_rank = 0;   // dim of the residue space cut by the conditions
};

int residue_subspace_rank(const StratumSpec& spec);
/// Flat ids of poles whose residue vanishes on the whole residue space.
std::vector<int> forced_zero_poles(const StratumSpec& spec);
DimensionData dimension(const StratumSpec& spec);

/// Connected single-component spec.
StratumSpec connected_spec(int genus, std::vector<int> orders);

/// JSON round trip (point indices are 0-based).
StratumSpec parse_spec(const std::string& json_text);
StratumSpec load_spec(const std::string& path);
std::string spec_to_json(const StratumSpec& spec);

/// Short human form, e.g. "g1(-3,1,2)" or "g0(-2,0,0)+g0(-2,0,0)|{0.0,1.0}".
std::string spec_label(const StratumSpec& spec);

/// Normalized copy with point relabelling: perm[old_flat] = new_flat.
struct NormalizedSpec {
    StratumSpec spec;
    std::vector<int> perm;
    std::string key;
};
NormalizedSpec normalize(const StratumSpec& spec);
/// Exact serialization used for cache and fixture keys (no reordering).
std::string spec_key(const StratumSpec& spec);

/// Drop unconstrained parts and parts whose condition is implied by the rest.
StratumSpec drop_ineffective_parts(const StratumSpec& spec);

}  // namespace msd
