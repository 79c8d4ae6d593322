// Batch front end: construct families, count pattern copies, run the exact
// La search, evaluate the closed forms, and re-check the proof machinery.
// Output is JSON by default (CSV via --format csv), every count rendered as a
// decimal string, and identical invocations with identical seeds produce
// byte-identical output.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subposet/subposet.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace subposet;

std::string g_format = "json";

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += '"';
    return out;
}

std::string scalar_to_string(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_null()) return "";
    return v.dump();
}

void emit(const json& obj) {
    if (g_format == "json") {
        std::cout << obj.dump() << "\n";
        return;
    }
    // CSV: a "rows" array becomes one record per element, anything else is a
    // single record of the top-level fields
    std::vector<json> rows;
    if (obj.contains("rows") && obj["rows"].is_array())
        for (const auto& r : obj["rows"]) rows.push_back(r);
    else
        rows.push_back(obj);
    bool header_done = false;
    for (const auto& row : rows) {
        if (!header_done) {
            bool first = true;
            for (auto it = row.begin(); it != row.end(); ++it) {
                if (!first) std::cout << ',';
                std::cout << csv_quote(it.key());
                first = false;
            }
            std::cout << "\n";
            header_done = true;
        }
        bool first = true;
        for (auto it = row.begin(); it != row.end(); ++it) {
            if (!first) std::cout << ',';
            std::cout << csv_quote(scalar_to_string(it.value()));
            first = false;
        }
        std::cout << "\n";
    }
}

Family read_family_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open family file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    LoadResult lr = load_family(ss.str());
    if (lr.duplicates_dropped > 0)
        std::cerr << "note: " << lr.duplicates_dropped
                  << " duplicate set(s) collapsed\n";
    return std::move(lr.family);
}

void write_family_file(const Family& fam, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write family file '" + path + "'");
    out << serialize_family(fam);
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (...) {
            throw Error("malformed integer list '" + s + "'");
        }
    }
    if (out.empty()) throw Error("empty integer list");
    return out;
}

void emit_constructed(const Family& fam, const std::string& out_path) {
    json j;
    j["size"] = std::to_string(fam.size());
    j["n"] = fam.n;
    if (!out_path.empty())
        write_family_file(fam, out_path);
    else
        j["family"] = serialize_family(fam);
    emit(j);
}

int run(int argc, char** argv) {
    CLI::App app{"forbidden-subposet counting toolkit"};
    app.require_subcommand(1);
    app.add_option("--format", g_format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    // ---- construct ----
    auto* construct = app.add_subcommand("construct", "materialize a family");
    construct->require_subcommand(1);
    struct {
        int n = 0, k = 0, l = 0, i = 0;
        std::uint64_t cap = 10'000'000;
        std::string sizes, out;
    } c;
    auto add_out = [&](CLI::App* sc) {
        sc->add_option("--out", c.out, "write the family file here");
        sc->add_option("--cap", c.cap, "materialization size cap");
    };
    auto* c_knl = construct->add_subcommand("knl", "block construction F_{n,k,l}");
    c_knl->add_option("--n", c.n)->required();
    c_knl->add_option("--k", c.k)->required();
    c_knl->add_option("--l", c.l)->required();
    add_out(c_knl);
    c_knl->callback([&] { emit_constructed(knl_construction({c.n, c.k, c.l}, c.cap), c.out); });

    auto* c_kt = construct->add_subcommand("kt", "Katona-Tarjan paired family");
    c_kt->add_option("--n", c.n)->required();
    add_out(c_kt);
    c_kt->callback([&] { emit_constructed(katona_tarjan_family(c.n), c.out); });

    auto* c_levels = construct->add_subcommand("levels", "union of full levels");
    c_levels->add_option("--n", c.n)->required();
    c_levels->add_option("--sizes", c.sizes, "comma-separated level sizes")->required();
    add_out(c_levels);
    c_levels->callback(
        [&] { emit_constructed(level_family(c.n, parse_int_list(c.sizes)), c.out); });

    auto* c_dan = construct->add_subcommand("danialt", "tail-extended level family");
    c_dan->add_option("--n", c.n)->required();
    c_dan->add_option("--k", c.k)->required();
    c_dan->add_option("--l", c.l)->required();
    add_out(c_dan);
    c_dan->callback([&] { emit_constructed(danialt_construction(c.n, c.k, c.l), c.out); });

    auto* c_code = construct->add_subcommand("code", "middle level plus greedy code");
    c_code->add_option("--n", c.n)->required();
    c_code->add_option("--i", c.i)->required();
    add_out(c_code);
    c_code->callback([&] { emit_constructed(code_family_k22(c.n, c.i), c.out); });

    // ---- count ----
    auto* count = app.add_subcommand("count", "count weak copies of a pattern");
    struct {
        std::string family, poset;
        std::uint64_t budget = 100'000'000;
    } cnt;
    count->add_option("--family", cnt.family, "family file")->required();
    count->add_option("--poset", cnt.poset, "pattern spec")->required();
    count->add_option("--budget", cnt.budget, "search node budget");
    count->callback([&] {
        Family fam = read_family_file(cnt.family);
        Poset p = make_poset(cnt.poset);
        CopyOptions opts;
        opts.node_budget = cnt.budget;
        json j;
        j["value"] = count_copies(p, fam, opts).str();
        emit(j);
    });

    // ---- free ----
    auto* free_cmd = app.add_subcommand("free", "test freeness against patterns");
    struct {
        std::string family;
        std::vector<std::string> forbid;
        std::uint64_t budget = 100'000'000;
    } fr;
    free_cmd->add_option("--family", fr.family)->required();
    free_cmd->add_option("--forbid", fr.forbid, "forbidden pattern spec")->required();
    free_cmd->add_option("--budget", fr.budget);
    free_cmd->callback([&] {
        Family fam = read_family_file(fr.family);
        std::vector<Poset> patterns;
        for (const auto& s : fr.forbid) patterns.push_back(make_poset(s));
        CopyOptions opts;
        opts.node_budget = fr.budget;
        json j;
        j["free"] = is_free(fam, patterns, opts);
        emit(j);
    });

    // ---- search ----
    auto* search = app.add_subcommand("search", "exact La(n, forbidden, target)");
    struct {
        int n = 3;
        std::vector<std::string> forbid;
        std::string target = "chain:1";
        int threads = 1;
        std::uint64_t budget = 4'000'000'000ull;
        bool symmetry = false, no_symmetry = false;
    } se;
    search->add_option("--n", se.n)->required();
    search->add_option("--forbid", se.forbid)->required();
    search->add_option("--target", se.target)->required();
    search->add_option("--threads", se.threads);
    search->add_option("--budget", se.budget);
    search->add_flag("--symmetry", se.symmetry, "restrict the first set to orbit representatives");
    search->add_flag("--no-symmetry", se.no_symmetry);
    search->callback([&] {
        SearchProblem prob;
        prob.n = se.n;
        for (const auto& s : se.forbid) prob.forbidden.push_back(make_poset(s));
        prob.target = make_poset(se.target);
        prob.workers = se.threads;
        prob.node_budget = se.budget;
        if (se.symmetry) prob.symmetry_reduction = true;
        if (se.no_symmetry) prob.symmetry_reduction = false;
        SearchResult res = la_exact(prob);
        json j;
        j["value"] = res.value.str();
        j["witness"] = serialize_family(res.witness);
        j["exhausted"] = res.exhausted;
        emit(j);
    });

    // ---- formula ----
    auto* formula = app.add_subcommand("formula", "closed-form values");
    formula->require_subcommand(1);
    struct {
        int n = 0, k = 0, l = 0, s = 0;
        std::string sizes;
    } fo;
    auto* f_chains = formula->add_subcommand("chains", "multinomial chain count");
    f_chains->add_option("--n", fo.n)->required();
    f_chains->add_option("--sizes", fo.sizes, "strictly decreasing sizes")->required();
    f_chains->callback([&] {
        json j;
        j["value"] = chain_count_levels(fo.n, parse_int_list(fo.sizes)).str();
        emit(j);
    });
    auto* f_erdos = formula->add_subcommand("erdos", "sum of k largest binomials");
    f_erdos->add_option("--n", fo.n)->required();
    f_erdos->add_option("--k", fo.k)->required();
    f_erdos->callback([&] {
        json j;
        j["value"] = erdos_bound(fo.n, fo.k).str();
        emit(j);
    });
    auto* f_lachain = formula->add_subcommand("lachain", "La(n, P_k, P_l) over level unions");
    f_lachain->add_option("--n", fo.n)->required();
    f_lachain->add_option("--k", fo.k)->required();
    f_lachain->add_option("--l", fo.l)->required();
    f_lachain->callback([&] {
        LaChainfree r = la_chainfree(fo.n, fo.k, fo.l);
        json j;
        j["value"] = r.value.str();
        j["levels"] = r.levels;
        emit(j);
    });
    auto* f_const = formula->add_subcommand("constant", "conjectured extremal constant");
    f_const->add_option("--k", fo.k)->required();
    f_const->add_option("--l", fo.l)->required();
    f_const->add_option("--s", fo.s)->required();
    f_const->callback([&] {
        ConjectureConstant r = conjecture_constant(fo.k, fo.l, fo.s);
        json j;
        j["value"] = r.value.str();
        j["p1"] = r.p1.str();
        j["p2"] = r.p2.str();
        emit(j);
    });

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "re-check the proof machinery");
    verify->require_subcommand(1);
    struct {
        int n = 10, k = 4, l = 4;
        std::string family;
        bool random = false, p4 = false;
        std::uint64_t seed = 0;
        int proposals = 200;
    } vf;
    auto add_instance_opts = [&](CLI::App* sc, bool with_kl) {
        auto* fam_opt = sc->add_option("--family", vf.family, "family file");
        auto* rnd = sc->add_flag("--random", vf.random, "use a seeded random family");
        auto* seed = sc->add_option("--seed", vf.seed, "random seed");
        sc->add_option("--n", vf.n);
        sc->add_option("--proposals", vf.proposals);
        rnd->needs(seed);
        rnd->excludes(fam_opt);
        if (with_kl) {
            sc->add_option("--k", vf.k);
            sc->add_option("--l", vf.l);
        }
    };
    auto instance_family = [&]() -> Family {
        if (vf.random) return random_free_family(vf.n, vf.k, vf.l, vf.seed, vf.proposals);
        if (vf.family.empty()) throw Error("either --family or --random --seed is required");
        return read_family_file(vf.family);
    };

    auto* v_knl = verify->add_subcommand("knl", "block construction invariants");
    v_knl->add_option("--n", vf.n)->required();
    v_knl->add_option("--k", vf.k)->required();
    v_knl->add_option("--l", vf.l)->required();
    v_knl->callback([&] {
        KnlParams p{vf.n, vf.k, vf.l};
        KnlConstruction parts = knl_construction_parts(p);
        ComparabilityDigraph g = build_digraph(parts.family);
        bool free_ok = true;
        for (std::size_t v = 0; v < parts.family.size(); ++v)
            if (static_cast<int>(g.outdeg[v]) > vf.k - 1 ||
                static_cast<int>(g.indeg[v]) > vf.l - 1)
                free_ok = false;
        bool fan_ok = true;
        for (int s = 1; s <= vf.k - 1; ++s)
            if (count_fan_copies(g, s, FanDirection::Down) !=
                binomial(vf.k - 1, s) * BigCount(parts.upper.size()))
                fan_ok = false;
        json j;
        j["free"] = free_ok;
        j["fan_identity"] = fan_ok;
        j["upper_size"] = std::to_string(parts.upper.size());
        j["dp_matches"] = knl_plus_size_exact(p) == BigCount(parts.upper.size());
        emit(j);
    });

    auto* v_aug = verify->add_subcommand("augment", "augmentation lemmas");
    add_instance_opts(v_aug, true);
    v_aug->add_flag("--require-p4", vf.p4, "also demand and use P4-freeness");
    v_aug->callback([&] {
        Family fam = instance_family();
        AugmentationReport rep = augment_and_verify(fam, vf.k, vf.l, vf.p4 || vf.random);
        json j;
        j["f1_size"] = std::to_string(rep.f1.size());
        j["added_size"] = std::to_string(rep.added.size());
        j["lemma51"] = rep.lemma51_ok;
        j["lemma52"] = rep.lemma52_ok;
        j["g1_conditions"] = rep.g1_conditions_ok ? json(*rep.g1_conditions_ok) : json();
        j["matching"] = rep.matching_ok ? json(*rep.matching_ok) : json();
        j["counterexample"] =
            rep.counterexample ? json(format_set(*rep.counterexample)) : json();
        if (vf.random) j["seed"] = vf.seed;
        emit(j);
    });

    auto* v_hall = verify->add_subcommand("hall", "average Hall on a seeded graph");
    struct {
        std::uint64_t seed = 0;
        int a_max = 12, b_max = 6;
    } hl;
    v_hall->add_option("--seed", hl.seed)->required();
    v_hall->add_option("--a-max", hl.a_max);
    v_hall->add_option("--b-max", hl.b_max);
    v_hall->callback([&] {
        std::mt19937_64 rng(hl.seed);
        BipartiteGraph g;
        AverageHallResult res;
        int attempts = 0;
        do {  // first seeded graph satisfying both conditions
            g.b_count = 1 + rng() % static_cast<std::uint64_t>(hl.b_max);
            g.a_count = g.b_count + rng() % static_cast<std::uint64_t>(hl.a_max);
            g.b_adj.assign(g.b_count, {});
            for (std::uint32_t b = 0; b < g.b_count; ++b)
                for (std::uint32_t a = 0; a < g.a_count; ++a)
                    if (rng() % 3 == 0) g.b_adj[b].push_back(a);
            res = average_hall(g);
            ++attempts;
        } while (res.status == AverageHallResult::Status::IsolatedVertex ||
                 res.status == AverageHallResult::Status::AverageDegreeViolation);
        json j;
        j["a"] = g.a_count;
        j["b"] = g.b_count;
        j["attempts"] = attempts;
        j["conditions"] = true;
        j["matched"] = res.status == AverageHallResult::Status::Matched;
        j["seed"] = hl.seed;
        emit(j);
    });

    auto* v_repair = verify->add_subcommand("repair", "S-component repair");
    add_instance_opts(v_repair, false);
    v_repair->callback([&] {
        vf.k = vf.l = 4;
        Family fam = instance_family();
        RepairReport rep = s_component_repair(fam);
        ComparabilityDigraph g = build_digraph(rep.repaired);
        bool free55 = true;
        for (std::size_t v = 0; v < rep.repaired.size(); ++v)
            if (g.outdeg[v] > 4 || g.indeg[v] > 4) free55 = false;
        bool ratio_ok = true;  // original edges against grown component sizes
        for (const auto& comp : rep.components)
            if (2 * comp.edge_count > 3 * comp.repaired_size()) ratio_ok = false;
        std::size_t repaired_count = 0;
        for (const auto& comp : rep.components)
            if (comp.is_s_component) ++repaired_count;
        json j;
        j["components"] = rep.components.size();
        j["repaired"] = repaired_count;
        j["free_5_5"] = free55;
        j["ratio_ok"] = ratio_ok;
        if (vf.random) j["seed"] = vf.seed;
        emit(j);
    });

    auto* v_top = verify->add_subcommand("toplayer", "top-layer bound");
    add_instance_opts(v_top, true);
    v_top->callback([&] {
        Family fam = instance_family();
        TopLayerReport rep = top_layer_bound_check(fam, vf.k, vf.l);
        json j;
        j["a_size"] = std::to_string(rep.top.size());
        j["indegrees_zero"] = rep.indegrees_zero;
        j["independent"] = rep.independent;
        j["edge_bound"] = rep.edge_bound;
        j["fan_count"] = rep.fan_count.str();
        if (vf.random) j["seed"] = vf.seed;
        emit(j);
    });

    // ---- table ----
    auto* table = app.add_subcommand("table", "La(n, P_k, P_l) rows over a range of n");
    struct {
        int n_min = 0, n_max = 0, k = 0, l = 0;
    } tb;
    table->add_option("--n-min", tb.n_min)->required();
    table->add_option("--n-max", tb.n_max)->required();
    table->add_option("--k", tb.k)->required();
    table->add_option("--l", tb.l)->required();
    table->callback([&] {
        if (tb.n_min > tb.n_max) throw Error("--n-min must not exceed --n-max");
        json rows = json::array();
        for (int n = tb.n_min; n <= tb.n_max; ++n) {
            LaChainfree r = la_chainfree(n, tb.k, tb.l);
            json row;
            row["n"] = n;
            row["k"] = tb.k;
            row["l"] = tb.l;
            row["value"] = r.value.str();
            std::string lv;
            for (std::size_t i = 0; i < r.levels.size(); ++i) {
                if (i) lv += ' ';
                lv += std::to_string(r.levels[i]);
            }
            row["levels"] = lv;
            rows.push_back(row);
        }
        json j;
        j["rows"] = rows;
        emit(j);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const subposet::Error& e) {
        nlohmann::ordered_json j;
        j["error"] = e.what();
        std::cout << j.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        nlohmann::ordered_json j;
        j["error"] = e.what();
        std::cout << j.dump() << "\n";
        return 1;
    }
}
