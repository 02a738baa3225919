#pragma once

#include "msd/evaluate.hpp"
#include "msd/exact.hpp"
#include "msd/levelgraphs.hpp"
#include "msd/strata.hpp"
#include "msd/tautring.hpp"

#include <map>
#include <string>
#include <vector>

namespace msd {

/// One row of the Euler characteristic sum.
struct EulerTerm {
    int graph = 0;
    std::string encoding;
    int L = 0;
    Integer K = 1;
    int N_top = 0;
    long aut = 1;
    std::vector<Rational> level_factors;   // top xi-power integral per level
    std::vector<std::string> level_rules;  // evaluation rule per level
    Rational contribution;                 // K N_top / |Aut| times the factors
};

struct EulerReport {
    std::string spec;
    int d = 0;
    Rational chi;
    std::vector<EulerTerm> terms;
    std::string to_json() const;
    std::string to_table() const;
};

/// Orbifold Euler characteristic of the open projectivized stratum.
EulerReport euler_characteristic(Evaluator& ev, const StratumSpec& spec);

/// The Euler characteristic sum and the integral of the top Chern class, grouped by the
/// two-level undegeneration at the top passage. Sums over the graphs of each lower level
/// stratum are memoized, so only two-level graphs are ever enumerated.
class LevelSums {
public:
    explicit LevelSums(Evaluator& ev) : ev_(ev) {}
    Rational chi(const StratumSpec& spec);
    Rational top_chern(const StratumSpec& spec);
    /// Both values from one enumeration of the two-level graphs.
    std::pair<Rational, Rational> chi_and_top_chern(const StratumSpec& spec);
    std::size_t cached() const { return xi_sum_.size() + chern_sum_.size(); }
    void clear();

private:
    struct Split {
        Rational weight;   // K / |Aut|
        StratumSpec top, bottom;
        DimensionData top_dims, bottom_dims;
    };
    std::vector<Split> compute_splits(const StratumSpec& normalized);
    const std::vector<Split>& splits(const StratumSpec& normalized, const std::string& key);
    Rational chi_from(const NormalizedSpec& ns, const std::vector<Split>& sp);
    Rational top_chern_from(const NormalizedSpec& ns, const std::vector<Split>& sp);
    Rational xi_sum(const StratumSpec& spec);
    Rational chern_sum(const StratumSpec& spec, int u);

    Evaluator& ev_;
    std::map<std::string, std::vector<Split>> splits_;
    std::map<std::string, Rational> xi_sum_;
    std::map<std::pair<std::string, int>, Rational> chern_sum_;
};

/// N xi + sum over two-level graphs of (N - N_top) ell [D].
TautClass c1_log_cotangent(TautRing& ring);

/// Degree-k piece of the Chern polynomial, summed over level graphs.
TautClass chern_class(TautRing& ring, int k);

struct ChernReport {
    std::string spec;
    int d = 0;
    std::vector<TautClass> graded;   // c_0 .. c_d
    TautClass c1_closed;
    Rational top;                    // integral of c_d
    Rational chi;
    bool duality = false;            // top == (-1)^d chi
    std::vector<TautClass> ch;       // ch_0 .. ch_2 (where defined)
};

/// Chern polynomial with its top piece evaluated; graded pieces above max_graded are not stored.
ChernReport chern_polynomial(Evaluator& ev, const StratumSpec& spec, int max_graded = 2);

/// exp(sum over LG_1 of ell [D]) by repeated products, up to degree d.
TautClass exp_boundary_divisor(TautRing& ring);
/// 1 + sum over graphs of ell times the pushforward of prod_i sum_m (ell_i nu_i)^m / (m+1)!, up to degree d.
TautClass exp_via_normal_series(TautRing& ring);

/// Chern character in degrees 0..2 from the Chern classes: d, c1, (c1^2 - 2 c2)/2.
std::vector<TautClass> chern_character_truncated(TautRing& ring, const TautClass& c1, const TautClass& c2);

enum class HyperellipticForm { Minimal, BiZero };
Rational hyperelliptic_chi(int g, HyperellipticForm form);

struct CrossCheckRow {
    std::string name;
    Rational lhs;
    Rational rhs;
    bool pass = false;
    std::string detail;
};

/// Euler characteristics keyed by spec_label of connected specs, e.g. "g3(3,1)".
using ChiTable = std::map<std::string, Rational>;
ChiTable load_chi_table(const std::string& path);
ChiTable parse_chi_table(const std::string& json_text);

/// Hodge bundle identities in genus 3 and over M_{2,1}; missing inputs fail the row.
std::vector<CrossCheckRow> cross_check(const ChiTable& chis);

/// Coefficients of sum_m y^m/(m+1)! and of the inverse Todd series at x = -y, up to degree n.
std::vector<Rational> inverse_todd_series(int n);
std::vector<Rational> exp_prototype_series(int n);

}  // namespace msd
