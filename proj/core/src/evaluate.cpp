#include "msd/evaluate.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace msd {

using nlohmann::json;

namespace {

int total(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

bool all_zero(const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

std::vector<int> reorder(const std::vector<int>& psi, const std::vector<int>& perm) {
    std::vector<int> out(psi.size(), 0);
    for (std::size_t i = 0; i < psi.size(); ++i) out[perm[i]] = psi[i];
    return out;
}

Rational weight(const GraphInfo& gi) { return Rational(gi.prong.K, Integer(gi.prong.aut)); }

}  // namespace

std::string EvalKey::str() const {
    std::string s = spec + " xi^" + std::to_string(xi);
    if (L) s += " L^" + std::to_string(L);
    if (!all_zero(psi)) {
        s += " psi(";
        for (std::size_t i = 0; i < psi.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(psi[i]);
        }
        s += ")";
    }
    return s;
}

EvalKey make_key(const StratumSpec& spec, int xi, int L, const std::vector<int>& psi) {
    if (static_cast<int>(psi.size()) != spec.num_points()) throw ArgumentError("psi exponents do not match the points");
    auto ns = normalize(drop_ineffective_parts(spec));
    return {ns.key, xi, L, reorder(psi, ns.perm)};
}

std::vector<int> restrict_psi(const LevelStratum& ls, const std::vector<int>& psi) {
    std::vector<int> out(ls.half.size(), 0);
    for (std::size_t f = 0; f < ls.half.size(); ++f)
        if (ls.half[f].kind == HalfKind::Leg) out[f] = psi[ls.half[f].id];
    return out;
}

// ---------------------------------------------------------------- fixtures

void FixtureRegistry::register_fixture(const EvalKey& key, const Rational& value, const std::string& provenance) {
    auto k = key.str();
    auto it = entries_.find(k);
    if (it != entries_.end()) {
        if (it->second.value == value) return;
        throw ArgumentError("fixture collision for " + k + ": " + it->second.value.str() + " (" +
                            it->second.provenance + ") vs " + value.str() + " (" + provenance + ")");
    }
    entries_[k] = {value, provenance};
}

const Fixture* FixtureRegistry::lookup(const EvalKey& key) const {
    auto it = entries_.find(key.str());
    return it == entries_.end() ? nullptr : &it->second;
}

void FixtureRegistry::load_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SpecError(std::string("fixture file is not valid JSON: ") + e.what());
    }
    if (!j.is_array()) throw SpecError("fixture file must hold a JSON array");
    for (const auto& e : j) {
        try {
            auto spec = parse_spec(e.at("spec").dump());
            const auto& integrand = e.at("integrand");
            std::vector<int> psi(spec.num_points(), 0);
            int xi = 0;
            if (integrand.contains("xi_power")) {
                xi = integrand.at("xi_power").get<int>();
            } else if (integrand.contains("psi")) {
                for (const auto& [k, v] : integrand.at("psi").items()) {
                    int p = std::stoi(k);
                    if (p < 0 || p >= spec.num_points()) throw SpecError("psi point out of range in fixture");
                    psi[p] = v.get<int>();
                }
            } else {
                throw SpecError("fixture integrand needs xi_power or psi");
            }
            if (xi + total(psi) != dimension(spec).d)
                throw SpecError("fixture integrand is not of top degree for " + spec_label(spec));
            auto value = Rational::parse(e.at("value").get<std::string>());
            register_fixture(make_key(spec, xi, 0, psi), value, e.value("provenance", std::string("unspecified")));
        } catch (const json::exception& ex) {
            throw SpecError(std::string("malformed fixture entry: ") + ex.what());
        }
    }
}

void FixtureRegistry::load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open fixture file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    load_json_text(ss.str());
}

FixtureRegistry FixtureRegistry::defaults() {
    struct Row {
        int genus;
        std::vector<int> mu;
        const char* value;
    };
    static const std::vector<Row> rows = {
        {1, {0}, "1/24"},
        {2, {2}, "-1/640"},
        {3, {4}, "-305/580608"},
        {4, {6}, "-87983/199065600"},
        {0, {0, 0, -2}, "1"},
        {1, {2, -2}, "-1/8"},
        {1, {1, 1, -2}, "0"},
        {2, {3, 1, -2}, "0"},
        {1, {2, 1, -3}, "5/8"},
        {2, {5, -3}, "-21/20"},
        {2, {8, -2, -2, -2}, "-4527/32"},
    };
    FixtureRegistry r;
    for (const auto& row : rows) {
        auto spec = connected_spec(row.genus, row.mu);
        r.register_fixture(make_key(spec, dimension(spec).d, 0, std::vector<int>(row.mu.size(), 0)),
                           Rational::parse(row.value), "table of top xi-powers");
    }
    return r;
}

// ---------------------------------------------------------------- evaluator

Evaluator::Evaluator(FixtureRegistry fixtures) : fixtures_(std::move(fixtures)) {}

void Evaluator::clear_cache() {
    memo_.clear();
    rule_of_.clear();
}

void Evaluator::trim_boundaries(std::size_t max_kept) {
    if (boundaries_.size() > max_kept) boundaries_.clear();
}

Boundary& Evaluator::boundary(const StratumSpec& spec) {
    auto k = spec_key(spec);
    auto it = boundaries_.find(k);
    if (it != boundaries_.end()) return *it->second;
    auto b = std::make_unique<Boundary>(spec);
    auto& ref = *b;
    boundaries_.emplace(k, std::move(b));
    return ref;
}

Rational Evaluator::xi_top(const StratumSpec& B) {
    require_valid(B);
    return integral(B, dimension(B).d, 0, std::vector<int>(B.num_points(), 0));
}

Rational Evaluator::psi_top(const StratumSpec& B, const std::vector<int>& exponents) {
    require_valid(B);
    if (total(exponents) != dimension(B).d) throw ArgumentError("psi exponents are not of top degree");
    return integral(B, 0, 0, exponents);
}

std::string Evaluator::rule_for(const StratumSpec& B) {
    auto key = make_key(B, dimension(B).d, 0, std::vector<int>(B.num_points(), 0)).str();
    auto it = rule_of_.find(key);
    return it == rule_of_.end() ? std::string() : it->second;
}

Rational Evaluator::integral(const StratumSpec& B, int a, int b, const std::vector<int>& psi) {
    if (a < 0 || b < 0) throw ArgumentError("negative exponent");
    if (static_cast<int>(psi.size()) != B.num_points()) throw ArgumentError("psi exponents do not match the points");
    for (int x : psi)
        if (x < 0) throw ArgumentError("negative psi exponent");
    const int d = dimension(B).d;
    if (d < 0 || a + b + total(psi) != d) return 0;
    auto ns = normalize(drop_ineffective_parts(B));
    EvalKey key{ns.key, a, b, reorder(psi, ns.perm)};
    auto k = key.str();
    if (memoize_) {
        auto it = memo_.find(k);
        if (it != memo_.end()) {
            ++stats_.memo_hits;
            return it->second;
        }
    }
    if (++depth_ > 200) {
        depth_ = 0;
        throw InternalError("evaluation recursion too deep at " + k);
    }
    Rational v;
    try {
        v = compute(ns.spec, a, b, key.psi, k);
    } catch (Unevaluatable& e) {
        --depth_;
        throw Unevaluatable(std::string(e.what()) + "\n  needed by " + k, e.missing_keys);
    } catch (...) {
        --depth_;
        throw;
    }
    --depth_;
    ++stats_.computed;
    if (memoize_) memo_[k] = v;
    return v;
}

Rational Evaluator::compute(const StratumSpec& S, int a, int b, const std::vector<int>& psi, const std::string& key) {
    const auto dims = dimension(S);
    const int d = dims.d;
    const bool connected = S.connected();
    const int genus = connected ? S.components[0].genus : -1;
    const int n = S.num_points();
    auto set_rule = [&](const char* r) {
        note(r);
        if (b == 0 && all_zero(psi)) rule_of_[key] = r;
    };

    if (b > 0) {
        set_rule("level line bundle expansion");
        return via_L(S, a, b, psi);
    }
    if (!S.constrained_parts().empty()) {
        set_rule("residue condition removal");
        return via_residue_removal(S, a, psi);
    }
    if (d == 0) {
        if (!connected) throw InternalError("zero-dimensional disconnected stratum without conditions: " + key);
        set_rule("point");
        return 1;
    }
    if (a == 0) {
        if (!connected) {
            set_rule("psi on disconnected stratum vanishes");
            return 0;
        }
        if (genus == 0) {
            set_rule("genus-0 psi integral");
            std::vector<long> parts(psi.begin(), psi.end());
            return Rational(multinomial(n - 3, parts));
        }
        if (auto* f = fixtures_.lookup(EvalKey{spec_key(S), a, b, psi})) {
            ++stats_.fixture_uses;
            set_rule("fixture");
            return f->value;
        }
        set_rule("psi to xi");
        return via_backward(S, a, psi);
    }
    if (!all_zero(psi)) {
        if (connected && genus > 0) {
            if (auto* f = fixtures_.lookup(EvalKey{spec_key(S), a, b, psi})) {
                ++stats_.fixture_uses;
                set_rule("fixture");
                return f->value;
            }
            set_rule("psi to xi");
            return via_backward(S, a, psi);
        }
        set_rule("xi to psi");
        return via_forward(S, a, psi);
    }
    // top power of xi
    if (connected) {
        const auto& mu = S.components[0].orders;
        bool holo = std::all_of(mu.begin(), mu.end(), [](int m) { return m >= 0; });
        if (holo && n >= 2) {
            set_rule("holomorphic non-minimal");
            return 0;
        }
        std::vector<int> poles;
        for (int p = 0; p < n; ++p)
            if (mu[p] < 0) poles.push_back(p);
        if (genus == 0 && poles.size() == 1) {
            set_rule("genus-0 single pole");
            return Rational(mu[poles[0]] + 1).pow(static_cast<unsigned>(d));
        }
        if (genus == 1) {
            auto sorted = mu;
            std::sort(sorted.begin(), sorted.end());
            if (sorted.size() == 2 && sorted[0] == -sorted[1] && sorted[1] >= 2) {
                long k = sorted[1];
                set_rule("genus-1 closed form");
                return Rational(-(k - 1) * (k * k - 1), 24);
            }
            if (sorted.size() == 3 && sorted[1] == 1 && sorted[0] == -sorted[2] - 1 && sorted[2] >= 1) {
                long k = sorted[2];
                set_rule("genus-1 closed form");
                return Rational(k * k * k * k - 1, 24);
            }
        }
        if (auto* f = fixtures_.lookup(EvalKey{spec_key(S), a, b, psi})) {
            ++stats_.fixture_uses;
            set_rule("fixture");
            return f->value;
        }
        if (genus > 0)
            throw Unevaluatable("no rule or fixture for " + key, {key});
    }
    set_rule("xi to psi");
    return via_forward(S, a, psi);
}

Rational Evaluator::via_L(const StratumSpec& S, int a, int b, const std::vector<int>& psi) {
    Boundary& bd = boundary(S);
    Rational res = 0;
    for (int id : bd.graphs(1)) {
        const auto& gi = bd.info(id);
        const auto& top = gi.levels[0];
        const auto& bot = gi.levels[1];
        auto pt = restrict_psi(top, psi);
        auto pb = restrict_psi(bot, psi);
        const int dt = gi.level_dims[0].d, db = gi.level_dims[1].d;
        Rational sum = 0;
        for (int s = 0; s <= b - 1; ++s) {
            if (a + s + total(pt) != dt) continue;
            Rational ft = integral(top.spec, a + s, 0, pt);
            if (ft.is_zero()) continue;
            for (int t = 0; s + t <= b - 1; ++t) {
                int u = b - 1 - s - t;
                if (t + u + total(pb) != db) continue;
                Rational fb = integral(bot.spec, t, u, pb);
                if (fb.is_zero()) continue;
                Rational c(multinomial(b - 1, {s, t, u}));
                if (s % 2) c = -c;
                sum += c * ft * fb;
            }
        }
        res += weight(gi) * sum;
    }
    return res;
}

Rational Evaluator::via_residue_removal(const StratumSpec& S, int a, const std::vector<int>& psi) {
    // S carries only effective conditions here; remove the first one
    StratumSpec S0 = without_part(S, 0);
    Boundary& b0 = boundary(S0);
    Rational res = -integral(S0, a + 1, 0, psi);
    for (int id : residue_removal_graphs(b0, S, 0)) {
        const auto& gi = b0.info(id);
        auto pt = restrict_psi(gi.levels[0], psi);
        auto pb = restrict_psi(gi.levels[1], psi);
        if (a + total(pt) != gi.level_dims[0].d || total(pb) != gi.level_dims[1].d) continue;
        Rational ft = integral(gi.levels[0].spec, a, 0, pt);
        if (ft.is_zero()) continue;
        res -= weight(gi) * ft * integral(gi.levels[1].spec, 0, 0, pb);
    }
    return res;
}

Rational Evaluator::via_forward(const StratumSpec& S, int a, const std::vector<int>& psi) {
    Boundary& bd = boundary(S);
    const auto& lg1 = bd.graphs(1);
    const int n = S.num_points();
    // choose the point with the fewest graphs carrying it on the lower level
    int best = -1;
    std::size_t best_count = 0;
    std::vector<std::vector<int>> lower(n);
    for (int id : lg1) {
        const auto& g = bd.info(id).graph;
        for (int p = 0; p < n; ++p)
            if (g.vertices[g.leg_vertex[p]].level == 1) lower[p].push_back(id);
    }
    for (int p = 0; p < n; ++p)
        if (best < 0 || lower[p].size() < best_count) {
            best = p;
            best_count = lower[p].size();
        }
    const int q = best;
    Rational res = 0;
    const int m = S.order(q);
    if (m + 1 != 0) {
        auto p2 = psi;
        ++p2[q];
        res += Rational(m + 1) * integral(S, a - 1, 0, p2);
    }
    for (int id : lower[q]) {
        const auto& gi = bd.info(id);
        auto pt = restrict_psi(gi.levels[0], psi);
        auto pb = restrict_psi(gi.levels[1], psi);
        if (a - 1 + total(pt) != gi.level_dims[0].d || total(pb) != gi.level_dims[1].d) continue;
        Rational ft = integral(gi.levels[0].spec, a - 1, 0, pt);
        if (ft.is_zero()) continue;
        res -= weight(gi) * ft * integral(gi.levels[1].spec, 0, 0, pb);
    }
    return res;
}

Rational Evaluator::via_backward(const StratumSpec& S, int a, const std::vector<int>& psi) {
    const int n = S.num_points();
    int p = -1;
    for (int i = 0; i < n && p < 0; ++i)
        if (psi[i] > 0 && S.order(i) != -1) p = i;
    if (p < 0) {
        auto k = make_key(S, a, 0, psi).str();
        throw Unevaluatable("psi only at simple poles in positive genus: " + k, {k});
    }
    Boundary& bd = boundary(S);
    auto rest = psi;
    --rest[p];
    Rational res = integral(S, a + 1, 0, rest);
    for (int id : bd.graphs(1)) {
        const auto& gi = bd.info(id);
        if (gi.graph.vertices[gi.graph.leg_vertex[p]].level != 1) continue;
        auto pt = restrict_psi(gi.levels[0], rest);
        auto pb = restrict_psi(gi.levels[1], rest);
        if (a + total(pt) != gi.level_dims[0].d || total(pb) != gi.level_dims[1].d) continue;
        Rational ft = integral(gi.levels[0].spec, a, 0, pt);
        if (ft.is_zero()) continue;
        res += weight(gi) * ft * integral(gi.levels[1].spec, 0, 0, pb);
    }
    return res / Rational(S.order(p) + 1);
}

Rational Evaluator::evaluate_generator(Boundary& ambient, const AddGen& gen) {
    const auto& gi = ambient.info(gen.graph);
    int deg = gi.L + gen.decoration_degree();
    if (deg != ambient.dims().d)
        throw ArgumentError("generator of degree " + std::to_string(deg) + " on a stratum of dimension " +
                            std::to_string(ambient.dims().d));
    Rational v(gi.prong.K, gi.prong.ell * gi.prong.aut);
    for (int j = 0; j <= gi.L; ++j) {
        const auto& ls = gi.levels[j];
        std::vector<int> psi(ls.half.size(), 0);
        for (const auto& [h, e] : gen.psi) {
            int f = ls.find(h);
            if (f >= 0) psi[f] = e;
        }
        int a = j < static_cast<int>(gen.xi.size()) ? gen.xi[j] : 0;
        int b = j < static_cast<int>(gen.L.size()) ? gen.L[j] : 0;
        if (a + b + total(psi) != gi.level_dims[j].d) return 0;
        Rational f = integral(ls.spec, a, b, psi);
        if (f.is_zero()) return 0;
        v *= f;
    }
    return v;
}

Rational Evaluator::integrate(Boundary& ambient, const TautClass& c) {
    Rational s = 0;
    const int d = ambient.dims().d;
    for (const auto& [g, coeff] : c.terms) {
        if (ambient.info(g.graph).L + g.decoration_degree() != d) continue;
        s += coeff * evaluate_generator(ambient, g);
    }
    return s;
}

}  // namespace msd
