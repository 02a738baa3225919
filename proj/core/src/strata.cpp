#include "msd/strata.hpp"

#include "msd/exact.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace msd {

using nlohmann::json;

int StratumSpec::num_points() const {
    int n = 0;
    for (const auto& c : components) n += static_cast<int>(c.orders.size());
    return n;
}

int StratumSpec::flat(PointRef p) const {
    int n = 0;
    for (int c = 0; c < p.comp; ++c) n += static_cast<int>(components[c].orders.size());
    return n + p.idx;
}

PointRef StratumSpec::ref(int f) const {
    for (int c = 0; c < static_cast<int>(components.size()); ++c) {
        int n = static_cast<int>(components[c].orders.size());
        if (f < n) return {c, f};
        f -= n;
    }
    throw SpecError("point index out of range");
}

int StratumSpec::order(int f) const {
    auto r = ref(f);
    return components[r.comp].orders[r.idx];
}

int StratumSpec::comp_of(int f) const { return ref(f).comp; }

std::vector<int> StratumSpec::points_of(int c) const {
    int start = flat({c, 0});
    std::vector<int> v(components[c].orders.size());
    std::iota(v.begin(), v.end(), start);
    return v;
}

bool StratumSpec::has_constraints() const {
    for (const auto& p : residue_parts)
        if (p.constrained) return true;
    return false;
}

std::vector<std::vector<int>> StratumSpec::constrained_parts() const {
    std::vector<std::vector<int>> out;
    for (const auto& p : residue_parts) {
        if (!p.constrained) continue;
        std::vector<int> v;
        for (auto r : p.points) v.push_back(flat(r));
        std::sort(v.begin(), v.end());
        out.push_back(std::move(v));
    }
    return out;
}

Validation validate(const StratumSpec& spec) {
    Validation v;
    auto fail = [&](const std::string& msg) {
        v.ok = false;
        v.diagnostic = msg;
        return v;
    };
    if (spec.components.empty()) return fail("stratum has no components");
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        const auto& c = spec.components[i];
        if (c.genus < 0) return fail("component " + std::to_string(i) + ": negative genus");
        long s = 0;
        bool mero = false;
        for (int m : c.orders) {
            s += m;
            if (m < 0) mero = true;
        }
        if (s != 2L * c.genus - 2)
            return fail("component " + std::to_string(i) + ": degree condition violated (sum of orders " +
                        std::to_string(s) + " != 2g-2 = " + std::to_string(2 * c.genus - 2) + ")");
        if (2 * c.genus - 2 + static_cast<int>(c.orders.size()) <= 0)
            return fail("component " + std::to_string(i) + ": unstable (2g-2+n <= 0)");
        v.kinds.push_back(mero ? Kind::Meromorphic : Kind::Holomorphic);
    }
    std::set<PointRef> used;
    for (std::size_t k = 0; k < spec.residue_parts.size(); ++k) {
        const auto& part = spec.residue_parts[k];
        if (part.points.empty()) return fail("residue part " + std::to_string(k) + " is empty");
        for (auto r : part.points) {
            if (r.comp < 0 || r.comp >= static_cast<int>(spec.components.size()) || r.idx < 0 ||
                r.idx >= static_cast<int>(spec.components[r.comp].orders.size()))
                return fail("residue part " + std::to_string(k) + " references a missing point");
            if (spec.components[r.comp].orders[r.idx] > -2)
                return fail("residue part " + std::to_string(k) + " contains point (" + std::to_string(r.comp) +
                            "," + std::to_string(r.idx) + ") which is not a pole of order <= -2");
            if (!used.insert(r).second) return fail("residue parts are not disjoint");
        }
    }
    return v;
}

void require_valid(const StratumSpec& spec) {
    auto v = validate(spec);
    if (!v.ok) throw SpecError(v.diagnostic);
}

namespace {

// Constraint rows over the pole variables: residue theorem per component, then parts.
struct ResidueSystem {
    std::vector<int> poles;                 // flat ids
    std::vector<std::vector<long>> rows;
};

ResidueSystem residue_system(const StratumSpec& spec) {
    ResidueSystem rs;
    std::vector<int> var(spec.num_points(), -1);
    for (int f = 0; f < spec.num_points(); ++f)
        if (spec.order(f) < 0) {
            var[f] = static_cast<int>(rs.poles.size());
            rs.poles.push_back(f);
        }
    const std::size_t P = rs.poles.size();
    for (std::size_t c = 0; c < spec.components.size(); ++c) {
        std::vector<long> row(P, 0);
        bool any = false;
        for (int f : spec.points_of(static_cast<int>(c)))
            if (var[f] >= 0) {
                row[var[f]] = 1;
                any = true;
            }
        if (any) rs.rows.push_back(row);
    }
    for (const auto& part : spec.constrained_parts()) {
        std::vector<long> row(P, 0);
        for (int f : part) row[var[f]] = 1;
        rs.rows.push_back(row);
    }
    return rs;
}

}  // namespace

int residue_subspace_rank(const StratumSpec& spec) {
    auto rs = residue_system(spec);
    return static_cast<int>(rs.poles.size()) - rational_rank(rs.rows);
}

std::vector<int> forced_zero_poles(const StratumSpec& spec) {
    auto rs = residue_system(spec);
    std::vector<int> out;
    if (rs.rows.empty()) return out;
    const std::size_t P = rs.poles.size();
    // Echelon basis of the row space; e_k lies in it iff reducing e_k gives zero.
    std::vector<std::vector<long>> basis;
    std::vector<std::size_t> pivots;
    auto reduce = [&](std::vector<long> v) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
            long c = v[pivots[b]];
            if (c == 0) continue;
            long a = basis[b][pivots[b]];
            long g = 0;
            for (std::size_t j = 0; j < P; ++j) {
                v[j] = v[j] * a - basis[b][j] * c;
                g = std::gcd(g, v[j]);
            }
            if (g > 1)
                for (auto& x : v) x /= g;
        }
        return v;
    };
    for (const auto& r : rs.rows) {
        auto v = reduce(r);
        std::size_t piv = 0;
        while (piv < P && v[piv] == 0) ++piv;
        if (piv == P) continue;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            long c = basis[b][piv];
            if (c == 0) continue;
            long g = 0;
            for (std::size_t j = 0; j < P; ++j) {
                basis[b][j] = basis[b][j] * v[piv] - v[j] * c;
                g = std::gcd(g, basis[b][j]);
            }
            if (g > 1)
                for (auto& x : basis[b]) x /= g;
        }
        basis.push_back(std::move(v));
        pivots.push_back(piv);
    }
    for (std::size_t k = 0; k < P; ++k) {
        std::vector<long> e(P, 0);
        e[k] = 1;
        auto v = reduce(std::move(e));
        if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; })) out.push_back(rs.poles[k]);
    }
    return out;
}

DimensionData dimension(const StratumSpec& spec) {
    DimensionData d;
    auto rs = residue_system(spec);
    int l = static_cast<int>(rs.poles.size());
    d.residue_rank = l - rational_rank(rs.rows);
    int s = 0;
    for (const auto& c : spec.components) s += 2 * c.genus + static_cast<int>(c.orders.size()) - 1;
    d.N = s - (l - d.residue_rank);
    d.d = d.N - 1;
    return d;
}

StratumSpec connected_spec(int genus, std::vector<int> orders) {
    StratumSpec s;
    s.components.push_back({genus, std::move(orders)});
    return s;
}

StratumSpec parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SpecError(std::string("spec is not valid JSON: ") + e.what());
    }
    StratumSpec s;
    try {
        if (!j.is_object() || !j.contains("components")) throw SpecError("spec needs a \"components\" array");
        for (const auto& key : j.items())
            if (key.key() != "components" && key.key() != "residue_parts")
                throw SpecError("unknown spec field \"" + key.key() + "\"");
        for (const auto& c : j.at("components")) {
            Component comp;
            comp.genus = c.at("genus").get<int>();
            comp.orders = c.at("orders").get<std::vector<int>>();
            s.components.push_back(std::move(comp));
        }
        if (j.contains("residue_parts"))
            for (const auto& p : j.at("residue_parts")) {
                ResiduePart part;
                for (const auto& pt : p.at("points")) {
                    auto v = pt.get<std::vector<int>>();
                    if (v.size() != 2) throw SpecError("point references are [component, index] pairs");
                    part.points.push_back({v[0], v[1]});
                }
                part.constrained = p.value("constrained", true);
                s.residue_parts.push_back(std::move(part));
            }
    } catch (const json::exception& e) {
        throw SpecError(std::string("malformed spec: ") + e.what());
    }
    require_valid(s);
    return s;
}

StratumSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

std::string spec_to_json(const StratumSpec& spec) {
    json j;
    j["components"] = json::array();
    for (const auto& c : spec.components) j["components"].push_back({{"genus", c.genus}, {"orders", c.orders}});
    j["residue_parts"] = json::array();
    for (const auto& p : spec.residue_parts) {
        json pts = json::array();
        for (auto r : p.points) pts.push_back({r.comp, r.idx});
        j["residue_parts"].push_back({{"points", pts}, {"constrained", p.constrained}});
    }
    return j.dump();
}

std::string spec_label(const StratumSpec& spec) {
    std::string s;
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        if (i) s += "+";
        s += "g" + std::to_string(spec.components[i].genus) + "(";
        for (std::size_t k = 0; k < spec.components[i].orders.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(spec.components[i].orders[k]);
        }
        s += ")";
    }
    for (const auto& p : spec.residue_parts) {
        s += p.constrained ? "|{" : "|u{";
        for (std::size_t k = 0; k < p.points.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(p.points[k].comp) + "." + std::to_string(p.points[k].idx);
        }
        s += "}";
    }
    return s;
}

std::string spec_key(const StratumSpec& spec) { return spec_label(spec); }

NormalizedSpec normalize(const StratumSpec& spec) {
    const int n = spec.num_points();
    // part membership per point: (constrained flag, part size), -1 when free
    std::vector<std::pair<int, int>> tag(n, {0, 0});
    for (const auto& p : spec.residue_parts)
        for (auto r : p.points) tag[spec.flat(r)] = {p.constrained ? 2 : 1, static_cast<int>(p.points.size())};

    struct CompData {
        int genus;
        std::vector<std::tuple<int, int, int, int>> pts;   // order, tag, size, old flat
    };
    std::vector<CompData> comps;
    for (int c = 0; c < static_cast<int>(spec.components.size()); ++c) {
        CompData cd{spec.components[c].genus, {}};
        for (int f : spec.points_of(c)) cd.pts.emplace_back(spec.order(f), tag[f].first, tag[f].second, f);
        std::stable_sort(cd.pts.begin(), cd.pts.end(), [](const auto& a, const auto& b) {
            return std::make_tuple(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
                   std::make_tuple(std::get<0>(b), std::get<1>(b), std::get<2>(b));
        });
        comps.push_back(std::move(cd));
    }
    auto comp_sig = [](const CompData& c) {
        std::vector<std::tuple<int, int, int>> v;
        for (const auto& p : c.pts) v.emplace_back(std::get<0>(p), std::get<1>(p), std::get<2>(p));
        return std::make_pair(c.genus, v);
    };
    std::stable_sort(comps.begin(), comps.end(),
                     [&](const CompData& a, const CompData& b) { return comp_sig(a) < comp_sig(b); });

    NormalizedSpec out;
    out.perm.assign(n, -1);
    std::vector<PointRef> newref(n);
    int next = 0;
    for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
        Component comp{comps[c].genus, {}};
        for (int k = 0; k < static_cast<int>(comps[c].pts.size()); ++k) {
            int old = std::get<3>(comps[c].pts[k]);
            comp.orders.push_back(std::get<0>(comps[c].pts[k]));
            out.perm[old] = next++;
            newref[old] = {c, k};
        }
        out.spec.components.push_back(std::move(comp));
    }
    for (const auto& p : spec.residue_parts) {
        ResiduePart q;
        q.constrained = p.constrained;
        for (auto r : p.points) q.points.push_back(newref[spec.flat(r)]);
        std::sort(q.points.begin(), q.points.end());
        out.spec.residue_parts.push_back(std::move(q));
    }
    std::sort(out.spec.residue_parts.begin(), out.spec.residue_parts.end(),
              [](const ResiduePart& a, const ResiduePart& b) {
                  return std::make_pair(!a.constrained, a.points) < std::make_pair(!b.constrained, b.points);
              });
    out.key = spec_key(out.spec);
    return out;
}

StratumSpec drop_ineffective_parts(const StratumSpec& spec) {
    StratumSpec s = spec;
    s.residue_parts.erase(std::remove_if(s.residue_parts.begin(), s.residue_parts.end(),
                                         [](const ResiduePart& p) { return !p.constrained; }),
                          s.residue_parts.end());
    int rank = residue_subspace_rank(s);
    for (std::size_t k = s.residue_parts.size(); k-- > 0;) {
        StratumSpec t = s;
        t.residue_parts.erase(t.residue_parts.begin() + static_cast<long>(k));
        if (residue_subspace_rank(t) == rank) s = std::move(t);
    }
    return s;
}

}  // namespace msd
