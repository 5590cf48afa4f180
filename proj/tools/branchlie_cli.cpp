/* Copyright 2026 The branchlie Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */
// Batch front end: quotient, series, liegraph, normal, parabolic, verify.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "branchlie/errors.hpp"
#include "branchlie/finite_quotient.hpp"
#include "branchlie/grig_normal.hpp"
#include "branchlie/lie_graph.hpp"
#include "branchlie/parabolic.hpp"
#include "branchlie/series_lab.hpp"
#include "verify_suite.hpp"

namespace bl = branchlie;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kAssert = 1, kUsage = 2, kResource = 3 };

const std::vector<std::string> kGroups = {"gg", "grigorchuk", "gs", "gupta_sidki", "fg", "fabrykowski_gupta", "sylow"};
const std::vector<std::string> kFormats = {"json", "csv", "dot", "text"};

struct Global {
    std::string format;  // empty: verb default
    std::string output;
};

std::string fmt_or(const Global& g, const std::string& def) { return g.format.empty() ? def : g.format; }

void emit(const Global& g, const std::string& text) {
    if (g.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.output, std::ios::binary);
    if (!f) throw bl::DomainError("cannot write " + g.output);
    f << text;
}

[[noreturn]] void bad_format(const std::string& verb, const std::string& f) {
    throw bl::DomainError(verb + " does not support --format " + f);
}

// ---------------------------------------------------------------- quotient

struct QuotientArgs {
    std::string group = "gg";
    int level = 3;
    int p = 2;
    std::string series = "lower_central";
    std::string import_path, export_path;
    bool no_cache = false;
};

bl::SpecPtr spec_of(const std::string& group, int p, int level) {
    auto id = bl::parse_group(group);
    if (id == bl::GroupId::SylowP) return bl::sylow_spec(p, std::max(level, 1));
    return bl::spec_for(id);
}

std::filesystem::path cache_path(const QuotientArgs& a) {
    const char* dir = std::getenv("BRANCHLIE_CACHE_DIR");
    if (!dir || !*dir || a.no_cache) return {};
    auto id = bl::parse_group(a.group);
    std::string name = bl::group_name(id);
    if (id == bl::GroupId::SylowP) name += "-p" + std::to_string(a.p);
    return std::filesystem::path(dir) / (name + "-L" + std::to_string(a.level) + ".bq");
}

bl::QuotientPtr load_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw bl::DomainError("cannot read " + path);
    return bl::FiniteQuotient::load(f);
}

void save_file(const bl::QuotientPtr& q, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw bl::DomainError("cannot write " + path.string());
    q->save(f);
}

int run_quotient(const QuotientArgs& a, const Global& g) {
    bl::QuotientPtr q;
    std::string origin = "built";
    if (!a.import_path.empty()) {
        q = load_file(a.import_path);
        origin = "imported";
    } else {
        auto cp = cache_path(a);
        if (!cp.empty() && std::filesystem::exists(cp)) {
            q = load_file(cp.string());
            origin = "cache";
        } else {
            q = bl::FiniteQuotient::build(spec_of(a.group, a.p, a.level), a.level);
            if (!cp.empty()) save_file(q, cp);
        }
    }
    if (!a.export_path.empty()) save_file(q, a.export_path);

    auto kind = bl::parse_series(a.series);
    auto s = bl::series(q, kind);
    std::string f = fmt_or(g, "text");
    std::ostringstream os;
    if (f == "json") {
        json j;
        j["group"] = bl::group_name(q->spec->id);
        j["p"] = q->p;
        j["level"] = q->level;
        j["order_exp"] = q->order_exp();
        j["series"] = bl::series_name(kind);
        j["ranks"] = s.ranks;
        j["length"] = s.length;
        j["elementary"] = s.elementary;
        os << j.dump(2) << "\n";
    } else if (f == "csv") {
        os << "degree,rank\n";
        for (std::size_t i = 0; i < s.ranks.size(); ++i) os << i + 1 << "," << s.ranks[i] << "\n";
    } else if (f == "text") {
        os << bl::group_name(q->spec->id) << " level " << q->level << ": order " << q->p << "^" << q->order_exp()
           << " (" << origin << ")\n";
        os << bl::series_name(kind) << " length " << s.length << ", ranks";
        for (int r : s.ranks) os << " " << r;
        os << "\n";
    } else {
        bad_format("quotient", f);
    }
    emit(g, os.str());
    return kOk;
}

// ---------------------------------------------------------------- series

struct SeriesArgs {
    std::string group = "gs";
    std::string kind = "hp";
    int n = 5;
    std::size_t terms = 0;  // 0: degree + 1
    int witt_r = 2;
    bool gk = false;
};

int run_series(const SeriesArgs& a, const Global& g) {
    std::string f = fmt_or(g, "csv");
    std::ostringstream os;
    if (a.kind == "witt") {
        if (a.witt_r < 1 || a.n < 1) throw bl::DomainError("witt needs --r >= 1 and --n >= 1");
        if (f == "json") {
            json j = json::array();
            for (int k = 1; k <= a.n; ++k) j.push_back(bl::witt_dimension(a.witt_r, k).str());
            os << j.dump(2) << "\n";
        } else {
            os << "n,dimension\n";
            for (int k = 1; k <= a.n; ++k) os << k << "," << bl::witt_dimension(a.witt_r, k) << "\n";
        }
        emit(g, os.str());
        return kOk;
    }
    auto id = bl::parse_group(a.group);
    bl::Poly p;
    if (a.kind == "hp") p = bl::hp_from_q(id, a.n);
    else if (a.kind == "q") p = bl::q_poly(id, a.n);
    else if (a.kind == "gs_r") p = bl::gs_r_poly(a.n);
    else if (a.kind == "restricted") p = bl::gg_restricted_hp(a.terms ? a.terms : 64);
    else throw bl::DomainError("unknown series kind: " + a.kind);

    std::size_t terms = a.terms;
    if (!terms) terms = p.trunc() != bl::Poly::kExact ? p.trunc() : static_cast<std::size_t>(std::max<long>(p.degree() + 1, 1));
    if (a.gk) {
        auto c = p.to_ints(terms);
        auto e = bl::gk_estimate(std::vector<std::int64_t>(c.begin() + 1, c.end()));
        if (f == "json") {
            json j{{"slope", e.slope}, {"residual", e.residual}, {"from", e.from}, {"to", e.to}};
            os << j.dump(2) << "\n";
        } else {
            os << "slope,residual,from,to\n" << e.slope << "," << e.residual << "," << e.from << "," << e.to << "\n";
        }
    } else if (f == "csv") {
        os << bl::poly_csv(p, terms);
    } else if (f == "json") {
        os << bl::poly_json(p, terms);
    } else if (f == "text") {
        os << p.truncated(terms).to_string() << "\n";
    } else {
        bad_format("series", f);
    }
    emit(g, os.str());
    return kOk;
}

// ---------------------------------------------------------------- liegraph

struct LieArgs {
    std::string family = "gupta_sidki";
    std::int64_t max_degree = 21;
    int sylow_p = 2;
    int sylow_len = 6;
    int census = 0;
};

int run_liegraph(const LieArgs& a, const Global& g) {
    auto fam = bl::parse_family(a.family);
    std::string f = fmt_or(g, "csv");
    std::ostringstream os;
    if (a.census > 0) {
        auto c = bl::quotient_census(fam, a.census, a.sylow_p);
        if (f == "json") os << json(c).dump() << "\n";
        else if (f == "csv") os << bl::to_csv_ranks(c);
        else bad_format("liegraph --census", f);
        emit(g, os.str());
        return kOk;
    }
    auto graph = bl::generate(fam, a.max_degree, a.sylow_p, a.sylow_len);
    if (f == "csv") os << bl::to_csv_ranks(bl::hp_coefficients(graph, a.max_degree));
    else if (f == "dot") os << bl::to_dot(graph);
    else if (f == "json") os << bl::to_json(graph);
    else if (f == "text") {
        auto r = bl::hp_coefficients(graph, a.max_degree);
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << "\n";
    }
    emit(g, os.str());
    return kOk;
}

// ---------------------------------------------------------------- normal

struct NormalArgs {
    bool count = false, table = false, lattice = false, extremes = false, enumerate = false;
    std::string index;
    int max_exponent = 34;
    int exact_level = 7;
    int level = 5;
    int k_big = 8, k_small = 6;
};

int run_normal(const NormalArgs& a, const Global& g) {
    int modes = a.count + a.table + a.lattice + a.extremes + a.enumerate + !a.index.empty();
    if (modes != 1) throw bl::DomainError("normal needs exactly one of --count, --table, --index, --enumerate, --lattice, --extremes");
    bl::CountOptions co;
    co.max_exact_level = a.exact_level;
    std::ostringstream os;
    auto src = [](bl::CountSource s) { return s == bl::CountSource::exact ? "exact" : "symbolic"; };

    if (a.count) {
        auto tab = bl::count_bn_table(a.max_exponent, co);
        std::string f = fmt_or(g, "csv");
        if (f == "json") {
            json j = json::array();
            for (std::size_t n = 0; n < tab.size(); ++n)
                j.push_back({{"n", n}, {"b_n", tab[n].value}, {"source", src(tab[n].source)}, {"level", tab[n].level}});
            os << j.dump(2) << "\n";
        } else if (f == "csv") {
            os << "n,b_n,source\n";
            for (std::size_t n = 0; n < tab.size(); ++n) os << n << "," << tab[n].value << "," << src(tab[n].source) << "\n";
        } else if (f == "text") {
            for (std::size_t n = 0; n < tab.size(); ++n) os << (n ? "," : "") << tab[n].value;
            os << "\n";
        } else {
            bad_format("normal --count", f);
        }
    } else if (a.table) {
        std::string f = fmt_or(g, "csv");
        auto rows = bl::table_fixture();
        if (f == "json") {
            json j = json::array();
            for (auto& r : rows) j.push_back({{"exponent", r.exponent}, {"descriptor", r.w.to_string()}});
            os << j.dump(2) << "\n";
        } else if (f == "csv" || f == "text") {
            os << "exponent,descriptor\n";
            for (auto& r : rows) os << r.exponent << ",\"" << r.w.to_string() << "\"\n";
        } else {
            bad_format("normal --table", f);
        }
    } else if (!a.index.empty()) {
        auto w = bl::parse_descriptor(a.index);
        int e = bl::index_of(w);
        std::string f = fmt_or(g, "text");
        if (f == "json") os << json{{"descriptor", w.to_string()}, {"exponent", e}}.dump(2) << "\n";
        else os << w.to_string() << " index 2^" << e << "\n";
    } else if (a.enumerate) {
        auto en = bl::enumerate_normal(a.max_exponent);
        std::string f = fmt_or(g, "csv");
        if (f == "json") {
            json j = json::array();
            for (auto& e : en)
                j.push_back({{"exponent", e.exponent},
                             {"in_K", e.in_K},
                             {"name", e.in_K ? (e.descriptor ? e.descriptor->to_string() : "") : e.name},
                             {"verified", e.realized_matches}});
            os << j.dump(2) << "\n";
        } else {
            os << "exponent,in_K,name\n";
            for (auto& e : en)
                os << e.exponent << "," << (e.in_K ? 1 : 0) << ",\""
                   << (e.in_K ? (e.descriptor ? e.descriptor->to_string() : "?") : e.name) << "\"\n";
        }
    } else if (a.lattice) {
        std::string f = fmt_or(g, "dot");
        if (f != "dot") bad_format("normal --lattice", f);
        bl::NormalLattice lat(a.level, a.max_exponent);
        os << bl::lattice_dot(lat, a.max_exponent);
    } else {
        auto rep = bl::extremes_check(a.k_big, a.k_small, co);
        std::string f = fmt_or(g, "csv");
        auto rows = [&](const char* fam, const std::vector<bl::ExtremeRow>& v, json& j) {
            for (auto& r : v) {
                if (f == "json")
                    j.push_back({{"family", fam}, {"k", r.k}, {"n", r.n}, {"expected", r.expected}, {"got", r.got},
                                 {"source", src(r.source)}});
                else
                    os << fam << "," << r.k << "," << r.n << "," << r.expected << "," << r.got << "," << src(r.source) << "\n";
            }
        };
        json j = json::array();
        if (f != "json") os << "family,k,n,expected,got,source\n";
        rows("2^k+2", rep.big, j);
        rows("5*2^k+1", rep.small, j);
        if (f == "json") os << j.dump(2) << "\n";
        emit(g, os.str());
        return rep.ok() ? kOk : kAssert;
    }
    emit(g, os.str());
    return kOk;
}

// ---------------------------------------------------------------- parabolic

struct ParabolicArgs {
    std::string group = "gg";
    int level = 8;
    int ray = -1;
    int p = 2;
    int word_radius = 0;
    bool inequalities = false;
    int truncation = 64;
    int radius = 10;
    std::vector<int> polygrowth;
};

int run_parabolic(const ParabolicArgs& a, const Global& g) {
    std::ostringstream os;
    auto id = bl::parse_group(a.group);
    if (a.inequalities) {
        auto r = bl::growth_inequalities(id, a.truncation, a.radius);
        os << bl::growth_report_json(r);
        emit(g, os.str());
        return kOk;
    }
    if (a.word_radius > 0) {
        auto w = bl::word_growth(id, a.word_radius);
        std::string f = fmt_or(g, "csv");
        if (f == "json") os << bl::poly_json(w, static_cast<std::size_t>(a.word_radius) + 1);
        else os << bl::poly_csv(w, static_cast<std::size_t>(a.word_radius) + 1);
        emit(g, os.str());
        return kOk;
    }
    auto spec = spec_of(a.group, a.p, a.level);
    if (!a.polygrowth.empty()) {
        auto rep = bl::polygrowth_check(spec, a.polygrowth);
        json j;
        j["group"] = bl::group_name(id);
        j["estimate"] = rep.estimate;
        j["stable"] = rep.stable;
        j["bound"] = rep.bound;
        auto& rows = j["rows"] = json::array();
        for (auto& r : rep.rows)
            rows.push_back({{"level", r.level}, {"eccentricity", r.eccentricity}, {"global", r.global}, {"step", r.step}});
        os << j.dump(2) << "\n";
        emit(g, os.str());
        return kOk;
    }
    auto og = bl::orbit_growth(spec, a.level, a.ray);
    auto sp = og.spheres();
    std::string f = fmt_or(g, "csv");
    if (f == "json") {
        json j{{"group", bl::group_name(id)}, {"level", a.level}, {"eccentricity", og.eccentricity()}, {"spheres", sp}};
        os << j.dump(2) << "\n";
    } else if (f == "csv") {
        os << "distance,count\n";
        for (std::size_t r = 0; r < sp.size(); ++r) os << r << "," << sp[r] << "\n";
    } else if (f == "text") {
        os << og.growth().to_string() << "\n";
    } else {
        bad_format("parabolic", f);
    }
    emit(g, os.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lie algebras and normal subgroups of branch groups"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember(kFormats));
    app.add_option("-o,--output", g.output, "Write to a file instead of stdout");

    QuotientArgs qa;
    auto* q = app.add_subcommand("quotient", "Build G/stab(level) and print a series");
    q->add_option("--group", qa.group)->check(CLI::IsMember(kGroups));
    q->add_option("--level", qa.level)->check(CLI::Range(0, 12));
    q->add_option("--p", qa.p, "Prime for sylow")->check(CLI::IsMember({2, 3, 5, 7}));
    q->add_option("--series", qa.series)
        ->check(CLI::IsMember({"lower_central", "frattini_p", "dimension_p", "dimension_lazard", "lie_dimension_p", "derived"}));
    q->add_option("--import", qa.import_path, "Read a cached quotient")->check(CLI::ExistingFile);
    q->add_option("--export", qa.export_path, "Write the quotient cache");
    q->add_flag("--no-cache", qa.no_cache, "Ignore BRANCHLIE_CACHE_DIR");

    SeriesArgs sa;
    auto* s = app.add_subcommand("series", "Hilbert-Poincare series and friends");
    s->add_option("--group", sa.group)->check(CLI::IsMember(kGroups));
    s->add_option("--kind", sa.kind)->check(CLI::IsMember({"hp", "q", "gs_r", "restricted", "witt"}));
    s->add_option("--n", sa.n)->check(CLI::Range(1, 40));
    s->add_option("--terms", sa.terms, "Number of coefficients");
    s->add_option("--r", sa.witt_r, "Alphabet size for witt")->check(CLI::Range(1, 64));
    s->add_flag("--gk", sa.gk, "Print the growth slope of the ranks");

    LieArgs la;
    auto* l = app.add_subcommand("liegraph", "Generate a Lie graph");
    l->add_option("--family", la.family)
        ->check(CLI::IsMember({"sylow", "grigorchuk", "grigorchuk_restricted", "gupta_sidki", "fabrykowski_gupta",
                               "fabrykowski_gupta_restricted", "gg", "gs", "fg"}));
    l->add_option("--max-degree", la.max_degree)->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
    l->add_option("--p", la.sylow_p)->check(CLI::IsMember({2, 3, 5, 7}));
    l->add_option("--word-length", la.sylow_len)->check(CLI::Range(0, 16));
    l->add_option("--census", la.census, "Rank census of the level-n truncation instead")->check(CLI::Range(1, 30));

    NormalArgs na;
    auto* n = app.add_subcommand("normal", "Normal subgroups of the Grigorchuk group");
    n->add_flag("--count", na.count, "b_n for n <= max exponent");
    n->add_flag("--table", na.table, "Small-index descriptors");
    n->add_option("--index", na.index, "Index of a W(A;B;C) descriptor");
    n->add_flag("--enumerate", na.enumerate, "List subgroups of index <= 2^max-exponent");
    n->add_flag("--lattice", na.lattice, "Hasse diagram as DOT");
    n->add_flag("--extremes", na.extremes, "Check the extremal anchors");
    n->add_option("--max-exponent", na.max_exponent)->check(CLI::Range(0, 400));
    n->add_option("--exact-level", na.exact_level, "Deepest quotient for exact counts")->check(CLI::Range(4, 9));
    n->add_option("--level", na.level, "Quotient level for --lattice")->check(CLI::Range(1, 8));
    n->add_option("--k-big", na.k_big)->check(CLI::Range(2, 10));
    n->add_option("--k-small", na.k_small)->check(CLI::Range(0, 8));

    ParabolicArgs pa;
    auto* p = app.add_subcommand("parabolic", "Orbital and word growth");
    p->add_option("--group", pa.group)->check(CLI::IsMember(kGroups));
    p->add_option("--level", pa.level)->check(CLI::Range(1, 24));
    p->add_option("--ray", pa.ray, "Ray letter, default the last")->check(CLI::Range(-1, 7));
    p->add_option("--p", pa.p)->check(CLI::IsMember({2, 3, 5, 7}));
    p->add_option("--word-growth", pa.word_radius, "Sphere sizes of the Cayley graph")->check(CLI::Range(1, 20));
    p->add_flag("--inequalities", pa.inequalities, "JSON report of the growth inequalities");
    p->add_option("--truncation", pa.truncation)->check(CLI::Range(2, 4096));
    p->add_option("--radius", pa.radius)->check(CLI::Range(1, 20));
    p->add_option("--polygrowth", pa.polygrowth, "Levels for the polynomial growth estimate")->delimiter(',');

    std::string suite = "core";
    bl::verify::SuiteOptions vo;
    auto* v = app.add_subcommand("verify", "Run acceptance criteria");
    v->add_option("--suite", suite, "core, quick or a list like 2,6,13");
    v->add_option("--exact-level", vo.extremes_exact_level)->check(CLI::Range(4, 9));
    bool brief = false;
    v->add_flag("--brief", brief, "Only one line per criterion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*q) return run_quotient(qa, g);
        if (*s) return run_series(sa, g);
        if (*l) return run_liegraph(la, g);
        if (*n) return run_normal(na, g);
        if (*p) return run_parabolic(pa, g);
        if (*v) {
            vo.verbose = !brief;
            auto ids = bl::verify::parse_suite(suite);
            std::ostringstream os;
            int failed = bl::verify::run_suite(ids, vo, g.output.empty() ? std::cout : os);
            if (!g.output.empty()) emit(g, os.str());
            return failed ? kAssert : kOk;
        }
    } catch (const bl::ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const bl::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const bl::UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return kAssert;
    }
    return kUsage;
}
