#include "msd/evaluate.hpp"
#include "msd/invariants.hpp"
#include "msd/levelgraphs.hpp"
#include "msd/strata.hpp"
#include "msd/tautring.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::json;
using namespace msd;

namespace {

struct Options {
    std::string spec_path;
    std::vector<std::string> fixture_paths;
    std::string out_path;
    std::string table_path;
    int levels = 1;
    int threads = 1;
    bool as_json = false;
    bool verbose = false;
    bool tables = false;
};

// Exit status 2: the library contradicted itself.
struct ConsistencyFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string level_labels(const GraphInfo& gi) {
    std::string s;
    for (std::size_t j = 0; j < gi.levels.size(); ++j) {
        if (j) s += " / ";
        s += spec_label(gi.levels[j].spec);
    }
    return s;
}

json graph_json(const Boundary& bd, int id, bool with_twists) {
    const auto& gi = bd.info(id);
    json levels = json::array();
    for (std::size_t j = 0; j < gi.levels.size(); ++j)
        levels.push_back({{"level", -static_cast<int>(j)},
                          {"stratum", spec_label(gi.levels[j].spec)},
                          {"N", gi.level_dims[j].N},
                          {"d", gi.level_dims[j].d}});
    json ell_i = json::array();
    for (const auto& l : gi.prong.ell_i) ell_i.push_back(l.get_str());
    json j = {{"graph", graph_label(gi.graph)}, {"L", gi.L},        {"ell", gi.prong.ell.get_str()},
              {"ell_i", ell_i},                 {"K", gi.prong.K.get_str()}, {"aut", gi.prong.aut},
              {"levels", levels}};
    if (with_twists) {
        auto pd = prong_data(gi.graph, gi.prong.aut, true);
        j["g"] = pd.g.get_str();
        j["e"] = pd.e.get_str();
    }
    return j;
}

std::string graphs_table(Boundary& bd, const std::vector<int>& ids, bool with_twists) {
    std::ostringstream os;
    os << "  #   ell   K     |Aut|";
    if (with_twists) os << " g     e    ";
    os << " levels  graph\n";
    int k = 0;
    for (int id : ids) {
        const auto& gi = bd.info(id);
        char buf[128];
        std::snprintf(buf, sizeof buf, "  %-3d %-5s %-5s %-5ld", k++, gi.prong.ell.get_str().c_str(),
                      gi.prong.K.get_str().c_str(), gi.prong.aut);
        os << buf;
        if (with_twists) {
            auto pd = prong_data(gi.graph, gi.prong.aut, true);
            std::snprintf(buf, sizeof buf, " %-5s %-4s", pd.g.get_str().c_str(), pd.e.get_str().c_str());
            os << buf;
        }
        os << " " << level_labels(gi) << "  " << graph_label(gi.graph) << "\n";
    }
    return os.str();
}

std::string cmd_info(Evaluator& ev, const StratumSpec& spec, const Options& o) {
    auto v = validate(spec);
    auto dims = dimension(spec);
    Boundary& bd = ev.boundary(spec);
    const auto n1 = bd.graphs(1).size();
    json kinds = json::array();
    for (auto k : v.kinds) kinds.push_back(k == Kind::Holomorphic ? "holomorphic" : "meromorphic");
    if (o.as_json)
        return json{{"spec", spec_label(spec)},
                    {"components", spec.components.size()},
                    {"points", spec.num_points()},
                    {"kinds", kinds},
                    {"N", dims.N},
                    {"d", dims.d},
                    {"residue_rank", dims.residue_rank},
                    {"LG1", n1}}
                   .dump(2);
    std::ostringstream os;
    os << "stratum      " << spec_label(spec) << "\n"
       << "components   " << spec.components.size() << "\n"
       << "points       " << spec.num_points() << "\n"
       << "N            " << dims.N << "\n"
       << "d            " << dims.d << "\n"
       << "residue rank " << dims.residue_rank << "\n"
       << "|LG_1|       " << n1 << "\n";
    return os.str();
}

std::string cmd_graphs(Evaluator& ev, const StratumSpec& spec, const Options& o) {
    Boundary& bd = ev.boundary(spec);
    const auto& ids = bd.graphs(o.levels);
    if (o.as_json) {
        json a = json::array();
        for (int id : ids) a.push_back(graph_json(bd, id, true));
        return a.dump(2);
    }
    std::ostringstream os;
    os << "LG_" << o.levels << "(" << spec_label(spec) << "): " << ids.size() << " graphs\n";
    os << graphs_table(bd, ids, true);
    return os.str();
}

std::string cmd_divisors(Evaluator& ev, const StratumSpec& spec, const Options& o) {
    Boundary& bd = ev.boundary(spec);
    const auto& ids = bd.graphs(1);
    const int N = bd.dims().N;
    json a = json::array();
    std::ostringstream os;
    os << "boundary divisors of " << spec_label(spec) << ": " << ids.size() << "\n";
    os << "  #   ell   K     |Aut| Ntop  Nbot  top / bottom  graph\n";
    for (int id : ids) {
        const auto& gi = bd.info(id);
        const int idx = bd.lg1_index(id);
        json j = graph_json(bd, id, false);
        j["index"] = idx;
        j["N_top"] = gi.level_dims[0].N;
        j["N_bottom"] = gi.level_dims[1].N;
        j["N_minus_N_top"] = N - gi.level_dims[0].N;
        a.push_back(j);
        char buf[128];
        std::snprintf(buf, sizeof buf, "  %-3d %-5s %-5s %-5ld %-5d %-5d ", idx, gi.prong.ell.get_str().c_str(),
                      gi.prong.K.get_str().c_str(), gi.prong.aut, gi.level_dims[0].N, gi.level_dims[1].N);
        os << buf << level_labels(gi) << "  " << graph_label(gi.graph) << "\n";
    }
    return o.as_json ? a.dump(2) : os.str();
}

std::string cmd_profiles(Evaluator& ev, const StratumSpec& spec, const Options& o) {
    Boundary& bd = ev.boundary(spec);
    const auto& ids = bd.graphs(o.levels);
    json a = json::array();
    std::ostringstream os;
    os << "profiles of LG_" << o.levels << "(" << spec_label(spec) << "): " << ids.size() << "\n";
    for (int id : ids) {
        const auto& gi = bd.info(id);
        a.push_back({{"graph", graph_label(gi.graph)}, {"profile", gi.profile}});
        os << "  (";
        for (std::size_t k = 0; k < gi.profile.size(); ++k) os << (k ? "," : "") << gi.profile[k];
        os << ")  " << graph_label(gi.graph) << "\n";
    }
    return o.as_json ? a.dump(2) : os.str();
}

std::string cmd_chi(Evaluator& ev, const StratumSpec& spec, const Options& o) {
    auto r = euler_characteristic(ev, spec);
    if (o.as_json) return r.to_json();
    return o.verbose ? r.to_table() : "χ = " + r.chi.str() + "\n";
}

std::string cmd_xi_top(Evaluator& ev, const StratumSpec& spec, const Options& o) {
    auto v = ev.xi_top(spec);
    if (o.as_json)
        return json{{"spec", spec_label(spec)}, {"d", dimension(spec).d}, {"value", v.str()}, {"rule", ev.rule_for(spec)}}
            .dump(2);
    return v.str() + "\n";
}

json class_json(TautRing& ring, const TautClass& c) { return json::parse(ring.to_json(c)); }

std::string class_lines(TautRing& ring, const TautClass& c) {
    std::ostringstream os;
    if (c.is_zero()) os << "  0\n";
    for (const auto& [g, coef] : c.terms) os << "  " << coef << "  " << ring.describe(g) << "\n";
    return os.str();
}

std::string cmd_c1(Evaluator& ev, const StratumSpec& spec, const Options& o) {
    Boundary& bd = ev.boundary(spec);
    TautRing ring(bd);
    auto c1 = c1_log_cotangent(ring);
    auto graded = chern_class(ring, 1);
    if (!(c1 - graded).is_zero()) throw ConsistencyFailure("c1 closed form differs from the graph sum");
    if (o.as_json) return json{{"spec", spec_label(spec)}, {"c1", class_json(ring, c1)}}.dump(2);
    return "c1 of the log cotangent bundle on " + spec_label(spec) + "\n" + class_lines(ring, c1);
}

std::string cmd_chern(Evaluator& ev, const StratumSpec& spec, const Options& o) {
    auto r = chern_polynomial(ev, spec);
    if (!r.duality)
        throw ConsistencyFailure("top Chern class " + r.top.str() + " differs from (-1)^d chi = " +
                                 (r.d % 2 ? -r.chi : r.chi).str());
    TautRing ring(ev.boundary(spec));
    if (o.as_json) {
        json graded = json::array();
        for (const auto& c : r.graded) graded.push_back(class_json(ring, c));
        json ch = json::array();
        for (const auto& c : r.ch) ch.push_back(class_json(ring, c));
        return json{{"spec", r.spec}, {"d", r.d},           {"top", r.top.str()}, {"chi", r.chi.str()},
                    {"duality", r.duality}, {"graded", graded}, {"ch", ch}}
            .dump(2);
    }
    std::ostringstream os;
    os << "stratum " << r.spec << "  d = " << r.d << "\n";
    for (std::size_t k = 0; k < r.graded.size(); ++k) os << "c" << k << ":\n" << class_lines(ring, r.graded[k]);
    os << "integral of c" << r.d << " = " << r.top << "\n";
    os << "χ = " << r.chi << "\n";
    return os.str();
}

std::string cmd_check_tables(const Options& o) {
    std::string path = o.table_path.empty() ? std::string(MSD_DATA_DIR) + "/fixtures/euler_tables.json" : o.table_path;
    auto rows = cross_check(load_chi_table(path));
    bool ok = true;
    json a = json::array();
    std::ostringstream os;
    for (const auto& r : rows) {
        ok = ok && r.pass;
        a.push_back({{"name", r.name}, {"lhs", r.lhs.str()}, {"rhs", r.rhs.str()}, {"pass", r.pass}, {"detail", r.detail}});
        os << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.lhs << " vs " << r.rhs;
        if (!r.detail.empty()) os << "  (" << r.detail << ")";
        os << "\n";
    }
    std::string text = o.as_json ? a.dump(2) + "\n" : os.str();
    if (!ok) throw ConsistencyFailure(text);
    return text;
}

// Internal consistency on one spec: both Euler characteristic sums and the top Chern class agree.
std::string cmd_check_spec(Evaluator& ev, const StratumSpec& spec, const Options& o) {
    auto r = euler_characteristic(ev, spec);
    LevelSums ls(ev);
    auto [chi2, top] = ls.chi_and_top_chern(spec);
    const int d = dimension(spec).d;
    const Rational signed_chi = d % 2 ? -r.chi : r.chi;
    json a = json::array();
    std::ostringstream os;
    bool ok = true;
    auto row = [&](const std::string& name, const Rational& lhs, const Rational& rhs) {
        bool pass = lhs == rhs;
        ok = ok && pass;
        a.push_back({{"name", name}, {"lhs", lhs.str()}, {"rhs", rhs.str()}, {"pass", pass}});
        os << (pass ? "PASS " : "FAIL ") << name << ": " << lhs << " vs " << rhs << "\n";
    };
    row("chi, graph sum vs level sums", r.chi, chi2);
    row("top Chern class vs (-1)^d chi", top, signed_chi);
    std::string text = o.as_json ? a.dump(2) + "\n" : os.str();
    if (!ok) throw ConsistencyFailure(text);
    return text;
}

void emit(const std::string& text, const Options& o) {
    std::string t = text;
    if (!t.empty() && t.back() != '\n') t += '\n';
    if (o.out_path.empty()) {
        std::cout << t;
        return;
    }
    std::ofstream f(o.out_path);
    if (!f) throw SpecError("cannot write " + o.out_path);
    f << t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary combinatorics and intersection numbers of strata of differentials"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sc) {
        sc->add_option("--spec", o.spec_path, "stratum spec JSON file");
        sc->add_option("--fixtures", o.fixture_paths, "fixture JSON files")->expected(1, -1);
        sc->add_option("--out", o.out_path, "write the report to a file");
        sc->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
        sc->add_flag("--json", o.as_json, "machine-readable output");
        sc->add_flag("--verbose", o.verbose, "detailed human output with timing");
    };
    std::map<std::string, CLI::App*> subs;
    for (const char* name : {"info", "graphs", "divisors", "profiles", "chi", "xi-top", "c1", "chern", "check"}) {
        auto* sc = app.add_subcommand(name);
        common(sc);
        subs[name] = sc;
    }
    subs["graphs"]->add_option("--levels", o.levels, "number of levels below zero")->check(CLI::NonNegativeNumber);
    subs["profiles"]->add_option("--levels", o.levels, "number of levels below zero")->check(CLI::NonNegativeNumber);
    subs["check"]->add_flag("--tables", o.tables, "verify the Hodge bundle identities from tabulated values");
    subs["check"]->add_option("--table-file", o.table_path, "Euler characteristic table JSON");
    subs["info"]->description("dimensions and boundary size");
    subs["graphs"]->description("level graphs with L levels below zero");
    subs["divisors"]->description("two-level graphs with ell and N_top");
    subs["profiles"]->description("profiles of L-level graphs");
    subs["chi"]->description("orbifold Euler characteristic");
    subs["xi-top"]->description("integral of the top power of xi");
    subs["c1"]->description("first Chern class of the log cotangent bundle");
    subs["chern"]->description("Chern polynomial and its top degree integral");
    subs["check"]->description("internal consistency checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::string cmd;
    for (auto& [name, sc] : subs)
        if (sc->parsed()) cmd = name;

    auto t0 = std::chrono::steady_clock::now();
    try {
        if (cmd == "check" && o.tables) {
            emit(cmd_check_tables(o), o);
            return 0;
        }
        if (o.spec_path.empty()) throw SpecError("--spec is required");
        auto spec = load_spec(o.spec_path);
        FixtureRegistry fx = FixtureRegistry::defaults();
        for (const auto& p : o.fixture_paths) fx.load_json_file(p);
        Evaluator ev(std::move(fx));
        if (o.levels > dimension(spec).d && (cmd == "graphs" || cmd == "profiles"))
            throw SpecError("--levels exceeds the dimension " + std::to_string(dimension(spec).d));
        std::string text;
        if (cmd == "info") text = cmd_info(ev, spec, o);
        else if (cmd == "graphs") text = cmd_graphs(ev, spec, o);
        else if (cmd == "divisors") text = cmd_divisors(ev, spec, o);
        else if (cmd == "profiles") text = cmd_profiles(ev, spec, o);
        else if (cmd == "chi") text = cmd_chi(ev, spec, o);
        else if (cmd == "xi-top") text = cmd_xi_top(ev, spec, o);
        else if (cmd == "c1") text = cmd_c1(ev, spec, o);
        else if (cmd == "chern") text = cmd_chern(ev, spec, o);
        else if (cmd == "check") text = cmd_check_spec(ev, spec, o);
        emit(text, o);
        if (o.verbose && !o.as_json)
            std::cerr << "elapsed "
                      << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
        return 0;
    } catch (const ConsistencyFailure& e) {
        std::cout << e.what();
        std::cerr << "consistency check failed\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const Unevaluatable& e) {
        std::cerr << "missing fixture: " << e.what() << "\n";
        return 1;
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
