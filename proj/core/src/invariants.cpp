#include "msd/invariants.hpp"

#include <json.hpp>

#include <fstream>
#include <functional>
#include <sstream>

namespace msd {

using nlohmann::json;

// ---------------------------------------------------------------- Euler characteristic

EulerReport euler_characteristic(Evaluator& ev, const StratumSpec& spec) {
    require_valid(spec);
    Boundary& bd = ev.boundary(spec);
    EulerReport rep;
    rep.spec = spec_label(spec);
    rep.d = bd.dims().d;
    Rational sum = 0;
    for (int L = 0; L <= rep.d; ++L) {
        for (int id : bd.graphs(L)) {
            const auto& gi = bd.info(id);
            EulerTerm t;
            t.graph = id;
            t.encoding = graph_label(gi.graph);
            t.L = L;
            t.K = gi.prong.K;
            t.N_top = gi.level_dims[0].N;
            t.aut = gi.prong.aut;
            Rational prod(t.K * t.N_top, Integer(t.aut));
            for (int j = 0; j <= L; ++j) {
                const auto& ls = gi.levels[j].spec;
                Rational f = ev.xi_top(ls);
                t.level_factors.push_back(f);
                t.level_rules.push_back(ev.rule_for(ls));
                prod *= f;
            }
            t.contribution = prod;
            sum += prod;
            rep.terms.push_back(std::move(t));
        }
    }
    rep.chi = rep.d % 2 ? -sum : sum;
    return rep;
}

std::string EulerReport::to_json() const {
    json rows = json::array();
    for (const auto& t : terms) {
        json f = json::array();
        for (const auto& x : t.level_factors) f.push_back(x.str());
        rows.push_back({{"graph", t.encoding},
                        {"L", t.L},
                        {"K", t.K.get_str()},
                        {"N_top", t.N_top},
                        {"aut", t.aut},
                        {"level_factors", f},
                        {"level_rules", t.level_rules},
                        {"contribution", t.contribution.str()}});
    }
    json j = {{"spec", spec}, {"d", d}, {"chi", chi.str()}, {"terms", rows}};
    return j.dump(2);
}

std::string EulerReport::to_table() const {
    std::ostringstream os;
    os << "stratum " << spec << "  d = " << d << "\n";
    os << "  L  K     Ntop  |Aut|  contribution   factors  graph\n";
    for (const auto& t : terms) {
        std::string f;
        for (std::size_t j = 0; j < t.level_factors.size(); ++j) {
            if (j) f += " * ";
            f += t.level_factors[j].str();
            if (!t.level_rules[j].empty()) f += " [" + t.level_rules[j] + "]";
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "  %-2d %-5s %-5d %-6ld %-14s ", t.L, t.K.get_str().c_str(), t.N_top, t.aut,
                      t.contribution.str().c_str());
        os << buf << f << "  " << t.encoding << "\n";
    }
    os << "χ = " << chi << "\n";
    return os.str();
}

// ---------------------------------------------------------------- Chern classes

TautClass c1_log_cotangent(TautRing& ring) {
    Boundary& bd = ring.boundary();
    const int N = bd.dims().N;
    TautClass c = ring.xi() * Rational(N);
    for (int id : bd.graphs(1)) {
        const auto& gi = bd.info(id);
        c.add(ring.bare(id), Rational(gi.prong.ell * (N - gi.level_dims[0].N)));
    }
    if (bd.dims().d < 1) return {};
    return c;
}

namespace {

/// Monomials of prod_i (-xi_{i-1} - L_{i-1} + xi_i)^{e_i} on a graph, added to out with weight w.
void expand_normal_powers(TautRing& ring, int graph, int k0, const std::vector<int>& e, const Rational& w,
                          TautClass& out) {
    const int L = static_cast<int>(e.size());
    AddGen g = ring.bare(graph);
    g.xi[0] += k0;
    std::function<void(int, const Rational&)> rec = [&](int i, const Rational& c) {
        if (i == L) {
            out.add(g, c);
            return;
        }
        const int n = e[i];
        for (int s = 0; s <= n; ++s)
            for (int t = 0; s + t <= n; ++t) {
                int u = n - s - t;
                g.xi[i] += s;
                g.L[i] += t;
                g.xi[i + 1] += u;
                Rational m(multinomial(n, {s, t, u}));
                if ((s + t) % 2) m = -m;
                rec(i + 1, c * m);
                g.xi[i] -= s;
                g.L[i] -= t;
                g.xi[i + 1] -= u;
            }
    };
    rec(0, w);
}

}  // namespace

TautClass chern_class(TautRing& ring, int k) {
    Boundary& bd = ring.boundary();
    const int N = bd.dims().N;
    const int d = bd.dims().d;
    TautClass out;
    if (k < 0 || k > d) return out;
    for (int L = 0; L <= k; ++L) {
        for (int id : bd.graphs(L)) {
            const auto& gi = bd.info(id);
            std::vector<long> r(L + 1, 0);
            for (int i = 1; i <= L; ++i) {
                int top = L == 1 ? id : bd.undegenerate_id(id, {i});
                r[i] = N - bd.info(top).level_dims[0].N;
            }
            // k_1..k_L >= 1 with sum <= k, k_0 = k - sum
            std::vector<int> ks(L + 1, 1);
            std::function<void(int, int)> rec = [&](int i, int used) {
                if (i > L) {
                    int k0 = k - used;
                    Rational coef(gi.prong.ell * binomial(N - used, k0));
                    if (coef.is_zero()) return;
                    int tail = 0;
                    for (int j = L; j >= 1; --j) {
                        coef *= Rational(binomial(r[j] - tail, ks[j]));
                        tail += ks[j];
                    }
                    if (coef.is_zero()) return;
                    std::vector<int> e(L);
                    for (int j = 1; j <= L; ++j) e[j - 1] = ks[j] - 1;
                    expand_normal_powers(ring, id, k0, e, coef, out);
                    return;
                }
                for (int v = 1; used + v <= k; ++v) {
                    ks[i] = v;
                    rec(i + 1, used + v);
                }
            };
            rec(1, 0);
        }
    }
    return out;
}

TautClass exp_boundary_divisor(TautRing& ring) {
    Boundary& bd = ring.boundary();
    const int d = bd.dims().d;
    TautClass D;
    for (int id : bd.graphs(1)) D.add(ring.bare(id), Rational(bd.info(id).prong.ell));
    TautClass out = ring.one();
    TautClass pw = ring.one();
    for (int k = 1; k <= d; ++k) {
        pw = ring.degree_part(ring.multiply(pw, D), k);
        out += pw * Rational(Integer(1), factorial(k));
    }
    return out;
}

TautClass exp_via_normal_series(TautRing& ring) {
    Boundary& bd = ring.boundary();
    const int d = bd.dims().d;
    const auto coef = exp_prototype_series(d);
    TautClass out = ring.one();
    for (int L = 1; L <= d; ++L)
        for (int id : bd.graphs(L)) {
            const Rational ell(bd.info(id).prong.ell);
            std::vector<int> e(L, 0);
            auto rec = [&](auto& self, int i, int used, const Rational& c) -> void {
                if (i == L) {
                    expand_normal_powers(ring, id, 0, e, c, out);
                    return;
                }
                for (int m = 0; L + used + m <= d; ++m) {
                    e[i] = m;
                    self(self, i + 1, used + m, c * coef[m]);
                }
                e[i] = 0;
            };
            rec(rec, 0, 0, ell);
        }
    return out;
}

std::vector<TautClass> chern_character_truncated(TautRing& ring, const TautClass& c1, const TautClass& c2) {
    std::vector<TautClass> ch;
    const int d = ring.boundary().dims().d;
    ch.push_back(ring.one() * Rational(d));
    if (d >= 1) ch.push_back(c1);
    if (d >= 2) {
        TautClass q = ring.multiply(c1, c1);
        q -= c2 * Rational(2);
        ch.push_back(q * Rational(1, 2));
    }
    return ch;
}

ChernReport chern_polynomial(Evaluator& ev, const StratumSpec& spec, int max_graded) {
    require_valid(spec);
    Boundary& bd = ev.boundary(spec);
    TautRing ring(bd);
    ChernReport rep;
    rep.spec = spec_label(spec);
    rep.d = bd.dims().d;
    for (int k = 0; k <= std::min(rep.d, max_graded); ++k) rep.graded.push_back(chern_class(ring, k));
    rep.c1_closed = c1_log_cotangent(ring);
    TautClass top = static_cast<int>(rep.graded.size()) > rep.d ? rep.graded[rep.d] : chern_class(ring, rep.d);
    rep.top = ev.integrate(bd, top);
    rep.chi = euler_characteristic(ev, spec).chi;
    rep.duality = rep.top == (rep.d % 2 ? -rep.chi : rep.chi);
    if (rep.graded.size() >= 3)
        rep.ch = chern_character_truncated(ring, rep.graded[1], rep.graded[2]);
    else if (rep.graded.size() == 2)
        rep.ch = {rep.graded[0] * Rational(rep.d), rep.graded[1]};
    else
        rep.ch = {rep.graded[0] * Rational(rep.d)};
    return rep;
}

// ---------------------------------------------------------------- closed forms and cross-checks

Rational hyperelliptic_chi(int g, HyperellipticForm form) {
    if (g < 2) throw ArgumentError("hyperelliptic components need genus at least 2");
    if (form == HyperellipticForm::Minimal) return Rational(-1, 4L * g * (2L * g + 1));
    return Rational(1, (2L * g + 1) * (2L * g + 2));
}

ChiTable parse_chi_table(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SpecError(std::string("chi table is not valid JSON: ") + e.what());
    }
    if (!j.is_array()) throw SpecError("chi table must be a JSON array");
    ChiTable t;
    for (const auto& e : j) {
        try {
            auto spec = connected_spec(e.at("genus").get<int>(), e.at("orders").get<std::vector<int>>());
            require_valid(spec);
            auto v = Rational::parse(e.at("chi").get<std::string>());
            auto k = spec_label(spec);
            auto it = t.find(k);
            if (it != t.end() && it->second != v) throw SpecError("conflicting chi values for " + k);
            t[k] = v;
        } catch (const json::exception& ex) {
            throw SpecError(std::string("malformed chi table entry: ") + ex.what());
        }
    }
    return t;
}

ChiTable load_chi_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open chi table " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_chi_table(ss.str());
}

std::vector<CrossCheckRow> cross_check(const ChiTable& chis) {
    struct Term {
        int genus;
        std::vector<int> mu;
        Rational weight;
    };
    auto run = [&](const std::string& name, const std::vector<Term>& terms, const Rational& rhs) {
        CrossCheckRow row;
        row.name = name;
        row.rhs = rhs;
        Rational s = 0;
        std::string missing;
        for (const auto& t : terms) {
            auto k = spec_label(connected_spec(t.genus, t.mu));
            auto it = chis.find(k);
            if (it == chis.end()) {
                missing += (missing.empty() ? "" : ", ") + k;
                continue;
            }
            s += t.weight * it->second;
            row.detail += (row.detail.empty() ? "" : " + ") + t.weight.str() + "*chi(" + k + ")";
        }
        row.lhs = s;
        if (!missing.empty()) {
            row.pass = false;
            row.detail = "missing " + missing;
        } else {
            row.pass = s == rhs;
        }
        return row;
    };
    std::vector<CrossCheckRow> out;
    // projectivized Hodge bundle over M_3 with unmarked zeros: chi(P^2) chi(M_3) = 3 * (1/1008)
    out.push_back(run("hodge-bundle-M3",
                      {{3, {4}, 1},
                       {3, {3, 1}, 1},
                       {3, {2, 2}, Rational(1, 2)},
                       {3, {2, 1, 1}, Rational(1, 2)},
                       {3, {1, 1, 1, 1}, Rational(1, 24)}},
                      Rational(3, 1008)));
    // Hodge bundle over M_{2,1} twisted by twice the section: chi(P^2) chi(M_{2,1}) = 3 * (1/120).
    // Adding a regular point multiplies chi by the Euler characteristic 2 - 2g - n of the punctured fiber.
    out.push_back(run("twisted-hodge-bundle-M21",
                      {{2, {4, -2}, 1},
                       {2, {3, 1, -2}, 1},
                       {2, {2, 2, -2}, Rational(1, 2)},
                       {2, {2, 1, 1, -2}, Rational(1, 2)},
                       {2, {1, 1, 1, 1, -2}, Rational(1, 24)},
                       {2, {2}, Rational(-3)},
                       {2, {1, 1}, Rational(-4, 2)},
                       {2, {2}, 1},
                       {2, {1, 1}, 1}},
                      Rational(1, 40)));
    return out;
}

// ---------------------------------------------------------------- series

std::vector<Rational> exp_prototype_series(int n) {
    std::vector<Rational> c;
    for (int m = 0; m <= n; ++m) c.push_back(Rational(Integer(1), factorial(m + 1)));
    return c;
}

std::vector<Rational> inverse_todd_series(int n) {
    // Bernoulli numbers with B_1 = +1/2 give td(x) = sum B_m x^m / m!
    std::vector<Rational> B(n + 1, 0);
    B[0] = 1;
    for (int m = 1; m <= n; ++m) {
        Rational s = 0;
        for (int k = 0; k < m; ++k) s += Rational(binomial(m + 1, k)) * B[k];
        B[m] = -s / Rational(m + 1);
    }
    if (n >= 1) B[1] = Rational(1, 2);
    std::vector<Rational> td(n + 1);
    for (int m = 0; m <= n; ++m) td[m] = B[m] / Rational(factorial(m));
    // multiplicative inverse
    std::vector<Rational> inv(n + 1, 0);
    inv[0] = Rational(1) / td[0];
    for (int m = 1; m <= n; ++m) {
        Rational s = 0;
        for (int k = 1; k <= m; ++k) s += td[k] * inv[m - k];
        inv[m] = -s / td[0];
    }
    // substitute x = -y
    for (int m = 1; m <= n; m += 2) inv[m] = -inv[m];
    return inv;
}

}  // namespace msd

namespace msd {

// ---------------------------------------------------------------- grouped sums

std::vector<LevelSums::Split> LevelSums::compute_splits(const StratumSpec& S) {
    std::vector<Split> out;
    Boundary& bd = ev_.boundary(S);
    for (int id : bd.graphs(1)) {
        const auto& gi = bd.info(id);
        out.push_back({Rational(gi.prong.K, Integer(gi.prong.aut)), gi.levels[0].spec, gi.levels[1].spec,
                       gi.level_dims[0], gi.level_dims[1]});
    }
    return out;
}

const std::vector<LevelSums::Split>& LevelSums::splits(const StratumSpec& S, const std::string& key) {
    auto it = splits_.find(key);
    if (it != splits_.end()) return it->second;
    return splits_.emplace(key, compute_splits(S)).first->second;
}

void LevelSums::clear() {
    splits_.clear();
    xi_sum_.clear();
    chern_sum_.clear();
}

Rational LevelSums::xi_sum(const StratumSpec& spec) {
    auto ns = normalize(spec);
    auto it = xi_sum_.find(ns.key);
    if (it != xi_sum_.end()) return it->second;
    Rational res = ev_.xi_top(ns.spec);
    for (const auto& sp : splits(ns.spec, ns.key)) {
        Rational t = ev_.xi_top(sp.top);
        if (t.is_zero()) continue;
        res += sp.weight * t * xi_sum(sp.bottom);
    }
    xi_sum_[ns.key] = res;
    return res;
}

Rational LevelSums::chi(const StratumSpec& spec) {
    require_valid(spec);
    auto ns = normalize(spec);
    return chi_from(ns, compute_splits(ns.spec));
}

Rational LevelSums::top_chern(const StratumSpec& spec) {
    require_valid(spec);
    auto ns = normalize(spec);
    return top_chern_from(ns, compute_splits(ns.spec));
}

std::pair<Rational, Rational> LevelSums::chi_and_top_chern(const StratumSpec& spec) {
    require_valid(spec);
    auto ns = normalize(spec);
    auto sp = compute_splits(ns.spec);
    return {chi_from(ns, sp), top_chern_from(ns, sp)};
}

Rational LevelSums::chi_from(const NormalizedSpec& ns, const std::vector<Split>& all) {
    const auto dims = dimension(ns.spec);
    Rational res = Rational(dims.N) * ev_.xi_top(ns.spec);
    for (const auto& sp : all) {
        Rational t = ev_.xi_top(sp.top);
        if (t.is_zero()) continue;
        res += sp.weight * Rational(sp.top_dims.N) * t * xi_sum(sp.bottom);
    }
    return dims.d % 2 ? -res : res;
}

// Sum over graphs of a lower stratum of the Chern polynomial terms below a passage,
// with u powers of xi entering its top level from the passage above.
Rational LevelSums::chern_sum(const StratumSpec& spec, int u) {
    auto ns = normalize(spec);
    auto key = std::make_pair(ns.key, u);
    auto it = chern_sum_.find(key);
    if (it != chern_sum_.end()) return it->second;
    const auto dims = dimension(ns.spec);
    const int d = dims.d, N = dims.N;
    const std::vector<int> no_psi(ns.spec.num_points(), 0);
    Rational res = 0;
    if (u > d) {
        chern_sum_[key] = res;
        return res;
    }
    if (u == d) res = ev_.xi_top(ns.spec);
    for (const auto& sp : splits(ns.spec, ns.key)) {
        const int dT = sp.top_dims.d, dB = sp.bottom_dims.d;
        const int m = dT - u;
        if (m < 0) continue;
        const std::vector<int> top_psi(sp.top.num_points(), 0);
        const long r1 = N - sp.top_dims.N;
        Rational acc = 0;
        for (int w = 0; w <= dB; ++w) {
            Rational h = chern_sum(sp.bottom, w);
            if (h.is_zero()) continue;
            const int tail = dB - w;
            const int k = m + w + 1;
            Rational c = Rational(binomial(r1 - tail, k));
            if (c.is_zero()) continue;
            Rational inner = 0;
            for (int s = 0; s <= m; ++s) {
                Rational f = ev_.integral(sp.top, u + s, m - s, top_psi);
                if (f.is_zero()) continue;
                inner += Rational(multinomial(k - 1, {s, m - s, w})) * f;
            }
            if (m % 2) inner = -inner;
            acc += c * inner * h;
        }
        res += sp.weight * acc;
    }
    chern_sum_[key] = res;
    return res;
}

Rational LevelSums::top_chern_from(const NormalizedSpec& ns, const std::vector<Split>& all) {
    const auto dims = dimension(ns.spec);
    const int d = dims.d, N = dims.N;
    Rational res = Rational(binomial(N, d)) * ev_.xi_top(ns.spec);
    for (const auto& sp : all) {
        const int dT = sp.top_dims.d, dB = sp.bottom_dims.d;
        const std::vector<int> top_psi(sp.top.num_points(), 0);
        const long r1 = N - sp.top_dims.N;
        Rational acc = 0;
        for (int w = 0; w <= dB; ++w) {
            Rational h = chern_sum(sp.bottom, w);
            if (h.is_zero()) continue;
            const int tail = dB - w;
            for (int m = 0; m <= dT; ++m) {
                const int k = m + w + 1;
                const int k0 = dT - m;
                Rational c = Rational(binomial(N - k - tail, k0) * binomial(r1 - tail, k));
                if (c.is_zero()) continue;
                Rational inner = 0;
                for (int s = 0; s <= m; ++s) {
                    Rational f = ev_.integral(sp.top, k0 + s, m - s, top_psi);
                    if (f.is_zero()) continue;
                    inner += Rational(multinomial(k - 1, {s, m - s, w})) * f;
                }
                if (m % 2) inner = -inner;
                acc += c * inner * h;
            }
        }
        res += sp.weight * acc;
    }
    return res;
}

}  // namespace msd
