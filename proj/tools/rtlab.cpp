// rtlab: exact Ramsey-Turan toolkit for triangle-free graphs.
//
// Every command writes deterministic JSON artifacts (temp-then-rename) and
// prints the main JSON document on stdout. Tabular results additionally get a
// CSV with a wall-time header. Exit codes: 0 success, 1 a verified claim
// failed, 2 usage error, 3 node budget exhausted.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rt/canonical.hpp"
#include "rt/constructions.hpp"
#include "rt/extremal.hpp"
#include "rt/fortress.hpp"
#include "rt/graph6.hpp"
#include "rt/independence.hpp"
#include "rt/symmetrize.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Io {
    fs::path out_dir;
    std::string config; // canonical command line, hashed into every artifact
    double wall_ms = 0;

    std::string config_hash() const {
        std::uint64_t h = 1469598103934665603ull;
        for (const char c : config) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    json header() const {
        return json{{"tool", "rtlab"}, {"version", kVersion}, {"config", config},
                    {"config_hash", config_hash()}};
    }

    void write_atomic(const fs::path& path, const std::string& content) const {
        fs::create_directories(path.parent_path());
        const fs::path tmp = path.string() + ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary);
            f << content;
        }
        fs::rename(tmp, path);
    }

    void emit_json(const std::string& name, json doc) const {
        doc["meta"] = header();
        write_atomic(out_dir / (name + ".json"), doc.dump(2) + "\n");
    }

    void emit_csv(const std::string& name, const std::string& body) const {
        std::ostringstream head;
        head << "# rtlab " << kVersion << " config_hash=" << config_hash()
             << " wall_ms=" << wall_ms << "\n";
        write_atomic(out_dir / (name + ".csv"), head.str() + body);
    }

    void emit_lines(const std::string& name, const std::vector<std::string>& lines) const {
        std::string body;
        for (const auto& line : lines) body += line + "\n";
        write_atomic(out_dir / name, body);
    }
};

json json_graph(const rt::Graph& g) {
    return json{{"n", g.order()}, {"edges", g.edge_count()}, {"graph6", rt::to_graph6(g)}};
}

json json_vertex_set(rt::VertexSet s) {
    json arr = json::array();
    for (int v : s) arr.push_back(v);
    return arr;
}

json json_sweep_row(const rt::SweepRow& row) {
    json j{{"n", row.n},
           {"s", row.s},
           {"ex", row.ex ? json(*row.ex) : json(nullptr)},
           {"exact", row.exact},
           {"formula", row.formula},
           {"formula_value", row.formula_value ? json(*row.formula_value) : json(nullptr)},
           {"match", row.match ? json(*row.match) : json(nullptr)},
           {"trivial_bound", row.trivial_bound},
           {"g_cap", row.g_cap ? json(*row.g_cap) : json(nullptr)},
           {"cap_ok", row.cap_ok},
           {"witness_count", row.witness_count}};
    return j;
}

std::string csv_sweep(const std::vector<rt::SweepRow>& rows) {
    std::ostringstream os;
    os << "n,s,ex,formula,formula_value,match,witness_count,nodes,millis\n";
    for (const auto& r : rows) {
        os << r.n << ',' << r.s << ',';
        if (r.ex) os << *r.ex;
        os << ',' << r.formula << ',';
        if (r.formula_value) os << *r.formula_value;
        os << ',';
        if (r.match) os << (*r.match ? "true" : "false");
        os << ',' << r.witness_count << ',' << r.nodes << ',' << r.millis << "\n";
    }
    return os.str();
}

json json_mould(const rt::Mould& m) {
    json phi = json::array(), psi = json::array(), idx = json::array();
    for (const auto& a : m.phi) phi.push_back(json_vertex_set(a));
    for (const auto& b : m.psi) psi.push_back(json_vertex_set(b));
    for (int i : m.member_index) idx.push_back(i);
    return json{{"pattern", json_graph(m.pattern)}, {"member_index", idx}, {"phi", phi},
                {"psi", psi}};
}

json json_mould_report(const rt::MouldReport& rep) {
    return json{{"structurally_valid", rep.structurally_valid},
                {"psi_disjoint", rep.psi_disjoint},
                {"member_equivalences", rep.member_equivalences},
                {"union_induces_blowup", rep.union_induces_blowup},
                {"edge_domination_applicable", rep.edge_domination_applicable},
                {"edge_domination", rep.edge_domination},
                {"claw_domination_applicable", rep.claw_domination_applicable},
                {"claw_domination", rep.claw_domination},
                {"all_ok", rep.all_ok()}};
}

// shared graph-source options for commands operating on one graph
struct GraphSource {
    std::string graph6;
    std::vector<int> canonical; // n k s
    std::vector<int> perturb;   // n s j

    void attach(CLI::App* cmd) {
        auto* a = cmd->add_option("--graph", graph6, "graph6 line");
        auto* b = cmd->add_option("--canonical", canonical,
                                  "canonical blow-up parameters: n k s")
                      ->expected(3);
        auto* c = cmd->add_option("--perturb", perturb,
                                  "perturbed k=4 blow-up parameters: n s j")
                      ->expected(3);
        a->excludes(b)->excludes(c);
        b->excludes(c);
    }

    rt::Graph build() const {
        if (!graph6.empty()) return rt::from_graph6(graph6);
        if (canonical.size() == 3)
            return rt::canonical_blowup(canonical[0], canonical[1], canonical[2]).graph;
        if (perturb.size() == 3)
            return rt::perturb_canonical(perturb[0], perturb[1], perturb[2]).graph;
        throw CLI::ValidationError("one of --graph, --canonical, --perturb is required");
    }
};

int run(int argc, char** argv) {
    CLI::App app{"exact Ramsey-Turan toolkit for triangle-free graphs"};
    app.require_subcommand(1);

    std::string out_dir = [] {
        const char* env = std::getenv("RT_LAB_OUT");
        return std::string(env ? env : "out");
    }();
    int threads = 1;
    app.add_option("--out", out_dir, "output directory for artifacts");
    app.add_option("--threads", threads, "worker count for the searches")
        ->check(CLI::PositiveNumber);

    // construct
    auto* c_construct = app.add_subcommand("construct", "emit a named construction as graph6");
    int andrasfai_k = 0;
    std::vector<int> canonical_args, perturb_args, blowup_sizes;
    std::string blowup_base;
    c_construct->add_option("--andrasfai", andrasfai_k, "Andrasfai graph index k");
    c_construct->add_option("--canonical", canonical_args, "canonical blow-up: n k s")->expected(3);
    c_construct->add_option("--perturb", perturb_args, "perturbed blow-up: n s j")->expected(3);
    c_construct->add_option("--blowup-base", blowup_base, "graph6 base for a custom blow-up");
    c_construct->add_option("--sizes", blowup_sizes, "class sizes for --blowup-base");

    // alpha
    auto* c_alpha = app.add_subcommand("alpha", "maximum independent set");
    GraphSource alpha_src;
    alpha_src.attach(c_alpha);

    // ex
    auto* c_ex = app.add_subcommand("ex", "exact ex(n,s) with witnesses");
    int ex_n = 0, ex_s = 0;
    std::size_t witness_cap = 64;
    std::uint64_t node_budget = 1'000'000'000;
    c_ex->add_option("--n", ex_n, "vertex count")->required();
    c_ex->add_option("--s", ex_s, "independence bound")->required();
    c_ex->add_option("--witness-cap", witness_cap, "maximum stored witnesses");
    c_ex->add_option("--node-budget", node_budget, "search node budget")
        ->check(CLI::PositiveNumber);

    // sweep
    auto* c_sweep = app.add_subcommand("sweep", "ex table for one n, all s");
    int sweep_n = 0;
    std::size_t sweep_witness_cap = 8;
    std::uint64_t sweep_budget = 1'000'000'000;
    c_sweep->add_option("--n", sweep_n, "vertex count")->required();
    c_sweep->add_option("--witness-cap", sweep_witness_cap, "witnesses per cell");
    c_sweep->add_option("--node-budget", sweep_budget, "per-cell node budget")->check(CLI::PositiveNumber);

    // verify-paper
    auto* c_verify = app.add_subcommand(
        "verify-paper", "sweep all n up to --max-n and check the closed forms");
    int max_n = 12;
    std::uint64_t verify_budget = 1'000'000'000;
    c_verify->add_option("--max-n", max_n, "largest n to sweep")->required();
    c_verify->add_option("--node-budget", verify_budget, "per-cell node budget")->check(CLI::PositiveNumber);

    // fortress
    auto* c_fortress = app.add_subcommand("fortress", "maximum independent sets and their graph");
    GraphSource fortress_src;
    fortress_src.attach(c_fortress);
    int fortress_s = -1;
    std::size_t fortress_cap = 100000;
    c_fortress->add_option("--s", fortress_s, "independence number (default: computed)");
    c_fortress->add_option("--cap", fortress_cap, "member cap")->check(CLI::PositiveNumber);

    // imprint
    auto* c_imprint = app.add_subcommand("imprint", "induced pattern embedding in the fortress");
    GraphSource imprint_src;
    imprint_src.attach(c_imprint);
    int imprint_pattern_k = 3;
    std::string imprint_pattern_g6;
    c_imprint->add_option("--pattern-andrasfai", imprint_pattern_k, "pattern = Andrasfai k");
    c_imprint->add_option("--pattern", imprint_pattern_g6, "pattern as graph6");

    // mould
    auto* c_mould = app.add_subcommand("mould", "pattern mould search plus diagnostics");
    GraphSource mould_src;
    mould_src.attach(c_mould);
    int mould_pattern_k = 3;
    std::string mould_pattern_g6;
    std::uint64_t mould_budget = 50'000'000;
    c_mould->add_option("--pattern-andrasfai", mould_pattern_k, "pattern = Andrasfai k");
    c_mould->add_option("--pattern", mould_pattern_g6, "pattern as graph6");
    c_mould->add_option("--node-budget", mould_budget, "imprint search budget")->check(CLI::PositiveNumber);

    // canonise
    auto* c_canonise = app.add_subcommand(
        "canonise", "imprint-to-mould pipeline on a perturbed canonical blow-up");
    int can_n = 0, can_s = 0, can_move = 0, can_k = 3;
    c_canonise->add_option("--n", can_n, "vertex count")->required();
    c_canonise->add_option("--s", can_s, "independence number")->required();
    c_canonise->add_option("--move", can_move, "vertices moved from class 5 to class 4")
        ->required();
    c_canonise->add_option("--k", can_k, "Andrasfai pattern index");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Io io;
    io.out_dir = out_dir;
    {
        // --threads and --out are runtime knobs: artifacts must stay
        // byte-identical across them
        std::ostringstream cfg;
        bool first = true;
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg == "--threads" || arg == "--out") {
                ++i;
                continue;
            }
            if (arg.rfind("--threads=", 0) == 0 || arg.rfind("--out=", 0) == 0) continue;
            cfg << (first ? "" : " ") << arg;
            first = false;
        }
        io.config = cfg.str();
    }
    const auto t0 = std::chrono::steady_clock::now();
    auto finish = [&](json doc, const std::string& name, int code) {
        io.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        io.emit_json(name, doc);
        doc["meta"] = io.header();
        std::cout << doc.dump(2) << "\n";
        return code;
    };

    if (*c_construct) {
        rt::Graph g;
        if (c_construct->count("--andrasfai") > 0) {
            g = rt::andrasfai(andrasfai_k);
        } else if (canonical_args.size() == 3) {
            g = rt::canonical_blowup(canonical_args[0], canonical_args[1], canonical_args[2]).graph;
        } else if (perturb_args.size() == 3) {
            g = rt::perturb_canonical(perturb_args[0], perturb_args[1], perturb_args[2]).graph;
        } else if (!blowup_base.empty()) {
            g = rt::blowup({rt::from_graph6(blowup_base), blowup_sizes}).graph;
        } else {
            throw CLI::ValidationError("construct: no construction selected");
        }
        std::cout << rt::to_graph6(g) << "\n";
        io.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        io.emit_json("construct", json{{"graph", json_graph(g)},
                                       {"triangle_free", g.is_triangle_free()}});
        return 0;
    }

    if (*c_alpha) {
        const rt::Graph g = alpha_src.build();
        const rt::AlphaResult r = rt::alpha(g);
        return finish(json{{"graph", json_graph(g)},
                           {"alpha", r.alpha},
                           {"witness", json_vertex_set(r.witness)}},
                      "alpha", 0);
    }

    if (*c_ex) {
        rt::ExOptions opts;
        opts.witness_cap = witness_cap;
        opts.node_budget = node_budget;
        opts.threads = threads;
        const rt::ExResult r = rt::ex_exact(ex_n, ex_s, opts);
        std::vector<std::string> lines;
        for (const auto& w : r.witnesses) lines.push_back(rt::to_graph6(w));
        io.emit_lines("witnesses.g6", lines);
        json doc{{"n", ex_n},
                 {"s", ex_s},
                 {"ex", r.value ? json(*r.value) : json(nullptr)},
                 {"exact", r.exact},
                 {"witness_count", r.witnesses.size()},
                 {"witnesses_truncated", r.witnesses_truncated},
                 {"witness_file", "witnesses.g6"}};
        return finish(std::move(doc), "ex", r.exact ? 0 : 3);
    }

    if (*c_sweep) {
        rt::ExOptions opts;
        opts.witness_cap = sweep_witness_cap;
        opts.node_budget = sweep_budget;
        opts.threads = threads;
        const auto rows = rt::verify_formulas(sweep_n, opts);
        json jrows = json::array();
        bool exact = true;
        for (const auto& r : rows) {
            jrows.push_back(json_sweep_row(r));
            exact &= r.exact;
        }
        io.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        io.emit_csv("sweep", csv_sweep(rows));
        return finish(json{{"n", sweep_n}, {"rows", jrows}}, "sweep", exact ? 0 : 3);
    }

    if (*c_verify) {
        rt::ExOptions opts;
        opts.witness_cap = 4;
        opts.node_budget = verify_budget;
        opts.threads = threads;
        std::vector<rt::SweepRow> all;
        bool all_match = true, all_caps = true, exact = true;
        for (int n = 0; n <= max_n; ++n)
            for (auto& row : rt::verify_formulas(n, opts)) {
                if (row.match && !*row.match) all_match = false;
                if (!row.cap_ok) all_caps = false;
                exact &= row.exact;
                all.push_back(std::move(row));
            }
        json jrows = json::array();
        for (const auto& r : all) jrows.push_back(json_sweep_row(r));
        io.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        io.emit_csv("verify_paper", csv_sweep(all));
        const int code = !exact ? 3 : (all_match && all_caps ? 0 : 1);
        return finish(json{{"max_n", max_n},
                           {"rows", jrows},
                           {"all_match", all_match},
                           {"all_caps_hold", all_caps}},
                      "verify_paper", code);
    }

    if (*c_fortress) {
        const rt::Graph g = fortress_src.build();
        const int s = fortress_s >= 0 ? fortress_s : rt::alpha(g).alpha;
        const rt::Fortress f = rt::build_fortress(g, s, fortress_cap);
        const rt::FortressChecks checks = rt::fortress_checks(f);
        json members = json::array();
        for (const auto& m : f.members) members.push_back(json_vertex_set(m));
        json edges = json::array();
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = i + 1; j < f.size(); ++j)
                if (f.adjacent(i, j)) edges.push_back(json::array({i, j}));
        json doc{{"graph", json_graph(g)},
                 {"s", s},
                 {"member_count", f.size()},
                 {"members", members},
                 {"edges", edges},
                 {"triangle_free", checks.triangle_free},
                 {"bipartition", checks.bipartition ? json(*checks.bipartition) : json(nullptr)}};
        return finish(std::move(doc), "fortress", 0);
    }

    if (*c_imprint) {
        const rt::Graph g = imprint_src.build();
        const rt::Graph pattern = imprint_pattern_g6.empty() ? rt::andrasfai(imprint_pattern_k)
                                                             : rt::from_graph6(imprint_pattern_g6);
        const rt::Fortress f = rt::build_fortress(g, rt::alpha(g).alpha);
        const auto imprint = rt::find_imprint(f, pattern);
        json doc{{"graph", json_graph(g)},
                 {"pattern", json_graph(pattern)},
                 {"found", imprint.has_value()}};
        if (imprint) {
            json map = json::array();
            for (int idx : imprint->map) map.push_back(idx);
            doc["map"] = map;
            json sets = json::array();
            for (int idx : imprint->map)
                sets.push_back(json_vertex_set(f.members[static_cast<std::size_t>(idx)]));
            doc["members"] = sets;
        }
        return finish(std::move(doc), "imprint", 0);
    }

    if (*c_mould) {
        const rt::Graph g = mould_src.build();
        const rt::Graph pattern = mould_pattern_g6.empty() ? rt::andrasfai(mould_pattern_k)
                                                           : rt::from_graph6(mould_pattern_g6);
        const rt::Params params{g.order(), rt::alpha(g).alpha};
        const rt::MouldSearch search = rt::find_mould(g, params, pattern, mould_budget);
        json doc{{"graph", json_graph(g)},
                 {"pattern", json_graph(pattern)},
                 {"found", search.mould.has_value()},
                 {"budget_exhausted", search.budget_exhausted}};
        if (search.mould) {
            doc["mould"] = json_mould(*search.mould);
            doc["check"] = json_mould_report(rt::check_mould(g, params, *search.mould));
            const bool wagner = search.mould->pattern.order() == 8 &&
                                rt::isomorphic(search.mould->pattern, rt::andrasfai(3));
            const bool band = 4 * params.n < 11 * params.s && 8 * params.s < 3 * params.n;
            if (wagner && band) {
                const rt::MouldStats st = rt::mould_stats(g, params, *search.mould);
                doc["stats"] = json{{"e_within", st.e_within},
                                    {"e_cross", st.e_cross},
                                    {"e_outside", st.e_outside},
                                    {"heavy_count", st.heavy_count},
                                    {"bound_ok", st.bound_ok}};
            }
        }
        const int code = search.budget_exhausted ? 3 : 0;
        return finish(std::move(doc), "mould", code);
    }

    if (*c_canonise) {
        const rt::Graph g = rt::perturb_canonical(can_n, can_s, can_move).graph;
        const rt::Params params{can_n, can_s};
        const rt::Graph pattern = rt::andrasfai(can_k);
        const rt::Fortress f = rt::build_fortress(g, can_s);
        const auto imprint = rt::find_imprint(f, pattern);
        if (!imprint)
            return finish(json{{"graph", json_graph(g)}, {"found_imprint", false}}, "canonise", 1);
        std::vector<rt::VertexSet> a_sets;
        for (int idx : imprint->map)
            a_sets.push_back(f.members[static_cast<std::size_t>(idx)]);
        const rt::CanoniseResult result = rt::imprint_to_mould(g, params, can_k, a_sets);
        const rt::MouldReport check = rt::check_mould(result.graph, params, result.mould);

        json steps = json::array();
        bool proxies = true;
        for (const auto& st : result.trace) {
            steps.push_back(json{{"a_index", st.a_index},
                                 {"b", json_vertex_set(st.b)},
                                 {"triangle_free", st.triangle_free},
                                 {"alpha_ok", st.alpha_ok},
                                 {"edges_preserved", st.edges_preserved}});
            proxies &= st.triangle_free && st.alpha_ok && st.edges_preserved;
        }
        io.emit_lines("canonise_final.g6", {rt::to_graph6(result.graph)});
        const bool ok = proxies && check.all_ok();
        json doc{{"input", json_graph(g)},
                 {"found_imprint", true},
                 {"steps", steps},
                 {"final", json_graph(result.graph)},
                 {"final_alpha", rt::alpha(result.graph).alpha},
                 {"final_triangle_free", result.graph.is_triangle_free()},
                 {"mould", json_mould(result.mould)},
                 {"mould_check", json_mould_report(check)},
                 {"ok", ok}};
        return finish(std::move(doc), "canonise", ok ? 0 : 1);
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
