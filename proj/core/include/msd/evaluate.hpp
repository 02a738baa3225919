#pragma once

#include "msd/exact.hpp"
#include "msd/levelgraphs.hpp"
#include "msd/strata.hpp"
#include "msd/tautring.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace msd {

/// Raised when an integral needs data that is neither computable nor registered.
struct Unevaluatable : std::runtime_error {
    explicit Unevaluatable(const std::string& what, std::vector<std::string> missing = {})
        : std::runtime_error(what), missing_keys(std::move(missing)) {}
    std::vector<std::string> missing_keys;
};

/// Key of an integral of xi^a L^b psi^beta over a normalized generalized stratum.
struct EvalKey {
    std::string spec;   // key of the normalized spec
    int xi = 0;
    int L = 0;
    std::vector<int> psi;   // per flat point of the normalized spec
    std::string str() const;
    friend auto operator<=>(const EvalKey&, const EvalKey&) = default;
};

/// Normalizes (spec, integrand) into a key; psi is indexed by flat points of spec.
EvalKey make_key(const StratumSpec& spec, int xi, int L, const std::vector<int>& psi);

struct Fixture {
    Rational value;
    std::string provenance;
};

class FixtureRegistry {
public:
    /// Throws ArgumentError when the key exists with a different value.
    void register_fixture(const EvalKey& key, const Rational& value, const std::string& provenance);
    const Fixture* lookup(const EvalKey& key) const;
    /// Reads a JSON fixture file: [{"spec", "integrand", "value", "provenance"}].
    void load_json_file(const std::string& path);
    void load_json_text(const std::string& text);
    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, Fixture>& entries() const { return entries_; }

    /// Table of top xi-powers for small connected strata, shipped with the library.
    static FixtureRegistry defaults();

private:
    std::map<std::string, Fixture> entries_;
};

/// Counts of the evaluation routes taken, for reports and tests.
struct EvalStats {
    long memo_hits = 0;
    long computed = 0;
    long fixture_uses = 0;
    std::map<std::string, long> rules;
};

/// Integrals of level-wise tautological monomials on generalized strata, memoized.
class Evaluator {
public:
    explicit Evaluator(FixtureRegistry fixtures = FixtureRegistry::defaults());

    /// Integral of xi^a L^b prod psi_p^{psi[p]} over the projectivized stratum.
    Rational integral(const StratumSpec& B, int a, int b, const std::vector<int>& psi);
    Rational xi_top(const StratumSpec& B);
    Rational psi_top(const StratumSpec& B, const std::vector<int>& exponents);

    /// K/(|Aut| ell) times the product of level integrals. Throws ArgumentError on a degree mismatch.
    Rational evaluate_generator(Boundary& ambient, const AddGen& gen);
    /// Sum of coefficient times generator value over the top-degree terms of c.
    Rational integrate(Boundary& ambient, const TautClass& c);

    /// Catalog of a spec, shared between callers; the spec is used verbatim.
    Boundary& boundary(const StratumSpec& spec);

    FixtureRegistry& fixtures() { return fixtures_; }
    const EvalStats& stats() const { return stats_; }
    void set_memoize(bool on) { memoize_ = on; }
    void clear_cache();
    /// Drops cached catalogs when more than max_kept are held; no catalog reference may be live.
    void trim_boundaries(std::size_t max_kept);
    /// Name of the rule used for the last top-xi evaluation of this key (for reports).
    std::string rule_for(const StratumSpec& B);

private:
    Rational compute(const StratumSpec& S, int a, int b, const std::vector<int>& psi, const std::string& key);
    Rational via_L(const StratumSpec& S, int a, int b, const std::vector<int>& psi);
    Rational via_residue_removal(const StratumSpec& S, int a, const std::vector<int>& psi);
    Rational via_forward(const StratumSpec& S, int a, const std::vector<int>& psi);
    Rational via_backward(const StratumSpec& S, int a, const std::vector<int>& psi);
    void note(const std::string& rule) { ++stats_.rules[rule]; }

    FixtureRegistry fixtures_;
    std::unordered_map<std::string, Rational> memo_;
    std::unordered_map<std::string, std::string> rule_of_;
    std::unordered_map<std::string, std::unique_ptr<Boundary>> boundaries_;
    EvalStats stats_;
    bool memoize_ = true;
    int depth_ = 0;
};

/// Level-stratum exponent vector of a level of G, picking the entries of psi at legs.
std::vector<int> restrict_psi(const LevelStratum& ls, const std::vector<int>& psi);

}  // namespace msd
