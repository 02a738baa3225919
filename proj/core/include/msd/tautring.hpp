#pragma once

#include "msd/exact.hpp"
#include "msd/levelgraphs.hpp"
#include "msd/strata.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace msd {

/// Additive generator i_Gamma,* of a level-wise monomial.
/// Besides psi at legs and edge halves, the decoration may carry the level classes
/// xi^{[j]} and L^{[j]} (depth j), which the evaluator integrates directly.
struct AddGen {
    int graph = 0;
    std::vector<int> xi;          // per depth
    std::vector<int> L;           // per depth
    std::map<HalfId, int> psi;    // zero exponents are not stored

    int decoration_degree() const;
    friend auto operator<=>(const AddGen&, const AddGen&) = default;
};

/// Linear combination of additive generators of one ambient catalog.
class TautClass {
public:
    void add(const AddGen& g, const Rational& c);
    TautClass& operator+=(const TautClass& o);
    TautClass& operator-=(const TautClass& o);
    TautClass& operator*=(const Rational& c);
    friend TautClass operator+(TautClass a, const TautClass& b) { return a += b; }
    friend TautClass operator-(TautClass a, const TautClass& b) { return a -= b; }
    friend TautClass operator*(TautClass a, const Rational& c) { return a *= c; }

    bool is_zero() const { return terms.empty(); }
    std::size_t size() const { return terms.size(); }
    std::map<AddGen, Rational> terms;
};

/// ell_i times c1 of the normal bundle of D_Gamma in D_{delta_i^c(Gamma)}, pushed forward to the ambient.
struct NormalBundleClass {
    int graph = 0;
    int passage = 1;
    TautClass ell_nu;
    TautClass nu;
};

/// Calculus on the tautological ring of one ambient stratum.
class TautRing {
public:
    explicit TautRing(Boundary& ambient) : B_(ambient) {}
    Boundary& boundary() { return B_; }

    AddGen bare(int graph);
    int degree(const AddGen& g) const;
    TautClass one();
    TautClass xi();
    TautClass psi(int point);
    /// [D_Gamma] for a catalog graph of any depth.
    TautClass stratum(int graph);

    /// xi = (m+1) psi_q - sum over two-level graphs with q on the lower level of ell [D].
    TautClass xi_as_psi(int point);
    NormalBundleClass normal_bundle(int graph, int passage);
    /// Edge version for a two-level graph: -(kappa/ell)(psi_e+ + psi_e-) - (1/ell) sum over graphs where e becomes long.
    TautClass normal_bundle_via_edge(int graph, int edge);

    TautClass multiply(const TautClass& a, const TautClass& b);
    TautClass power(const TautClass& a, int k);
    /// Terms of total degree k.
    TautClass degree_part(const TautClass& a, int k) const;

    /// Pullback of a generator to Pi along delta_I(Pi) = gen.graph, with edge decorations averaged over automorphisms.
    TautClass pullback(const AddGen& g, int pi, const std::vector<int>& passages);
    /// ell_k nu_k on Pi as a class supported on Pi.
    TautClass ell_nu_on(int pi, int passage);

    std::string describe(const AddGen& g);
    std::string to_json(const TautClass& c);

private:
    TautClass multiply_generators(const AddGen& a, const AddGen& b);
    TautClass multiply_on_same_graph(const TautClass& a, const TautClass& b) const;

    Boundary& B_;
};

/// Spec with one residue part removed (parts keep their order).
StratumSpec without_part(const StratumSpec& B, int part);
/// True when removing the part enlarges the residue space.
bool part_is_effective(const StratumSpec& B, int part);
/// Two-level graphs of B0 = without_part(B, part) entering the class of B inside B0.
std::vector<int> residue_removal_graphs(Boundary& B0, const StratumSpec& B, int part);
/// Class of B inside the catalog of without_part(B, part); the fundamental class if the part is not effective.
TautClass remove_residue_condition(TautRing& ring0, const StratumSpec& B, int part);

}  // namespace msd
