// pmc: command-line front end for the perfect matching cut solver suite.
// Built entirely on the C API in pmc.h.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmc.h"

using ordered_json = nlohmann::ordered_json;

namespace {

struct GraphDeleter {
    void operator()(pmc_graph* g) const { pmc_graph_free(g); }
};
struct ResultDeleter {
    void operator()(pmc_result* r) const { pmc_result_free(r); }
};
struct CnfDeleter {
    void operator()(pmc_cnf* f) const { pmc_cnf_free(f); }
};
struct CutsetDeleter {
    void operator()(pmc_cutset* c) const { pmc_cutset_free(c); }
};
using GraphPtr = std::unique_ptr<pmc_graph, GraphDeleter>;
using ResultPtr = std::unique_ptr<pmc_result, ResultDeleter>;
using CnfPtr = std::unique_ptr<pmc_cnf, CnfDeleter>;
using CutsetPtr = std::unique_ptr<pmc_cutset, CutsetDeleter>;

[[noreturn]] void die_with_last_error() {
    std::cout << pmc_last_error_json() << "\n";
    std::exit(2);
}

[[noreturn]] void die(const std::string& message) {
    ordered_json j;
    j["status"] = "error";
    j["message"] = message;
    std::cout << j.dump() << "\n";
    std::exit(2);
}

void require_ok(pmc_status status) {
    if (status != PMC_OK) die_with_last_error();
}

std::string read_stream(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") return read_stream(std::cin);
    std::ifstream in(path);
    if (!in) die("cannot open " + path);
    return read_stream(in);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) die("cannot write " + path);
    out << content;
}

GraphPtr load_graph(const std::string& path) {
    pmc_graph* g = nullptr;
    require_ok(pmc_graph_parse(read_input(path).c_str(), &g));
    return GraphPtr(g);
}

struct SolveFlags {
    std::string algo = "auto";
    int oracle_limit = 0;
    int threads = 1;
    bool deterministic = false;
    bool enable_r10 = false;
};

ResultPtr run_solver(const pmc_graph* g, const SolveFlags& flags, const std::string& algo) {
    pmc_options options;
    pmc_options_init(&options);
    options.algorithm = algo.c_str();
    options.oracle_limit = flags.oracle_limit;
    options.threads = flags.threads;
    options.enable_r10 = flags.enable_r10 ? 1 : 0;
    pmc_result* res = nullptr;
    require_ok(pmc_solve(g, &options, &res));
    return ResultPtr(res);
}

ordered_json result_json(const pmc_graph* g, const pmc_result* res) {
    ordered_json j;
    j["has_pmc"] = pmc_result_has_pmc(res) != 0;
    j["algorithm"] = pmc_result_algorithm(res);
    j["n"] = pmc_graph_n(g);
    j["m"] = pmc_graph_m(g);
    std::vector<int> side(pmc_graph_n(g));
    if (pmc_result_certificate(res, side.data())) {
        ordered_json xs = ordered_json::array(), ys = ordered_json::array();
        for (size_t v = 0; v < side.size(); ++v) (side[v] ? ys : xs).push_back(v + 1);
        j["certificate"] = {{"X", std::move(xs)}, {"Y", std::move(ys)}};
    } else {
        j["certificate"] = nullptr;
    }
    char* stats = nullptr;
    require_ok(pmc_result_stats_json(res, &stats));
    j["stats"] = ordered_json::parse(stats);
    pmc_string_free(stats);
    return j;
}

int cmd_solve(const std::string& input, const SolveFlags& flags, bool cross_check,
              const std::string& out_path) {
    GraphPtr g = load_graph(input);

    auto start = std::chrono::steady_clock::now();
    ResultPtr res = run_solver(g.get(), flags, flags.algo);
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

    ordered_json j = result_json(g.get(), res.get());
    if (!flags.deterministic) j["wall_ms"] = elapsed.count();

    int exit_code = 0;
    if (cross_check) {
        ordered_json cc = ordered_json::array();
        bool first_answer = pmc_result_has_pmc(res.get()) != 0;
        bool agree = true;
        auto add_entry = [&](const char* name) {
            ResultPtr other = run_solver(g.get(), flags, name);
            bool has = pmc_result_has_pmc(other.get()) != 0;
            cc.push_back({{"algorithm", pmc_result_algorithm(other.get())}, {"has_pmc", has}});
            agree = agree && has == first_answer;
        };
        add_entry("branch");
        if (pmc_graph_n(g.get()) <= (flags.oracle_limit > 0 ? flags.oracle_limit : 24))
            add_entry("oracle");
        if (pmc_graph_max_degree(g.get()) <= 2) add_entry("deg2");
        if (pmc_graph_is_pseudo_chordal(g.get())) add_entry("pseudochordal");
        if (pmc_graph_is_t_free(g.get(), nullptr)) add_entry("tfree");
        j["cross_check"] = {{"agree", agree}, {"results", std::move(cc)}};
        if (!agree) exit_code = 1;
    }
    write_output(out_path, j.dump(2) + "\n");
    return exit_code;
}

int cmd_check(const std::string& graph_path, const std::string& cut_path, bool as_json) {
    GraphPtr g = load_graph(graph_path);
    ordered_json cut;
    try {
        cut = ordered_json::parse(read_input(cut_path));
    } catch (const std::exception& e) {
        die(std::string("bad cut JSON: ") + e.what());
    }
    const int n = pmc_graph_n(g.get());
    std::vector<int> side(n, -1);
    auto assign = [&](const char* key, int value) {
        if (!cut.contains(key)) die(std::string("cut JSON misses \"") + key + "\"");
        for (const auto& v : cut.at(key)) {
            long id = v.get<long>();
            if (id < 1 || id > n) die("cut vertex " + std::to_string(id) + " out of range");
            if (side[id - 1] != -1) die("cut lists vertex " + std::to_string(id) + " twice");
            side[id - 1] = value;
        }
    };
    assign("X", 0);
    assign("Y", 1);
    for (int v = 0; v < n; ++v)
        if (side[v] == -1) die("cut misses vertex " + std::to_string(v + 1));

    pmc_cut_class cls;
    require_ok(pmc_classify_cut(g.get(), side.data(), &cls));
    const char* names[] = {"NOT_A_CUT", "CUT", "MATCHING_CUT", "PERFECT_MATCHING_CUT"};
    bool pass = cls == PMC_PERFECT_MATCHING_CUT;
    if (as_json) {
        ordered_json j;
        j["class"] = names[cls];
        j["pass"] = pass;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << names[cls] << "\n" << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? 0 : 1;
}

int cmd_generate(const std::string& kind, std::vector<int> params, unsigned long long seed,
                 const std::string& cnf_path, const std::string& variant, int girth, int h,
                 const std::string& out_path, const std::string& map_path) {
    params.resize(2, 0);
    pmc_graph* g = nullptr;
    std::string map_json;
    if (kind == "reduction") {
        CnfPtr f = [&] {
            pmc_cnf* raw = nullptr;
            require_ok(pmc_cnf_parse(read_input(cnf_path).c_str(), &raw));
            return CnfPtr(raw);
        }();
        char* map_raw = nullptr;
        require_ok(pmc_reduce_to_graph(f.get(), variant.c_str(), girth, h, &g, &map_raw));
        map_json = map_raw;
        pmc_string_free(map_raw);
    } else {
        require_ok(pmc_graph_generate(kind.c_str(), params[0], params[1], seed, &g));
    }
    GraphPtr graph(g);
    char* text = nullptr;
    require_ok(pmc_graph_format(graph.get(), &text));
    write_output(out_path, text);
    pmc_string_free(text);
    if (!map_json.empty() && !map_path.empty()) write_output(map_path, map_json);
    return 0;
}

int cmd_verify_reduction(const std::string& cnf_path, const std::string& variant, int girth, int h,
                         bool as_json) {
    CnfPtr f = [&] {
        pmc_cnf* raw = nullptr;
        require_ok(pmc_cnf_parse(read_input(cnf_path).c_str(), &raw));
        return CnfPtr(raw);
    }();
    char* report_raw = nullptr;
    require_ok(pmc_verify_reduction(f.get(), variant.c_str(), girth, h, &report_raw));
    std::string report = report_raw;
    pmc_string_free(report_raw);

    auto parsed = ordered_json::parse(report);
    bool all_pass = true;
    for (const auto& item : parsed) all_pass = all_pass && item.at("pass").get<bool>();
    if (as_json) {
        std::cout << report;
    } else {
        for (const auto& item : parsed) {
            std::cout << (item.at("pass").get<bool>() ? "[PASS] " : "[FAIL] ")
                      << item.at("name").get<std::string>();
            std::string detail = item.at("detail").get<std::string>();
            if (!detail.empty()) std::cout << " (" << detail << ")";
            std::cout << "\n";
        }
    }
    return all_pass ? 0 : 1;
}

int cmd_bench(const std::vector<std::string>& inputs, const SolveFlags& flags,
              unsigned long long seed, const std::string& out_path) {
    std::ostringstream csv;
    csv << "instance,n,m,algorithm,has_pmc,nodes,millis\n";

    auto run_one = [&](const std::string& name, const pmc_graph* g) {
        auto start = std::chrono::steady_clock::now();
        ResultPtr res = run_solver(g, flags, flags.algo);
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
        char* stats_raw = nullptr;
        require_ok(pmc_result_stats_json(res.get(), &stats_raw));
        auto stats = ordered_json::parse(stats_raw);
        pmc_string_free(stats_raw);
        csv << name << ',' << pmc_graph_n(g) << ',' << pmc_graph_m(g) << ','
            << pmc_result_algorithm(res.get()) << ',' << (pmc_result_has_pmc(res.get()) ? 1 : 0)
            << ',' << stats.at("nodes").get<long>() << ',' << ms.count() << "\n";
    };

    if (inputs.empty()) {
        // built-in sweep: cycles, the cube, random connected graphs
        for (int n = 8; n <= 24; n += 4) {
            pmc_graph* g = nullptr;
            require_ok(pmc_graph_generate("cycle", n, 0, 0, &g));
            GraphPtr graph(g);
            run_one("cycle-" + std::to_string(n), graph.get());
        }
        {
            pmc_graph* g = nullptr;
            require_ok(pmc_graph_generate("cube", 0, 0, 0, &g));
            GraphPtr graph(g);
            run_one("cube", graph.get());
        }
        for (int n : {10, 20, 30, 40}) {
            for (int i = 0; i < 3; ++i) {
                pmc_graph* g = nullptr;
                require_ok(pmc_graph_generate("random-connected", n, 2 * n, seed + n * 10 + i, &g));
                GraphPtr graph(g);
                run_one("random-" + std::to_string(n) + "-" + std::to_string(i), graph.get());
            }
        }
    } else {
        for (const auto& path : inputs) {
            GraphPtr g = load_graph(path);
            run_one(path, g.get());
        }
    }
    write_output(out_path, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perfect matching cut solver suite"};
    app.require_subcommand(1);

    SolveFlags flags;
    bool cross_check = false, as_json = false;
    std::string input, output, cut_path, cnf_path, map_path;
    std::string kind, variant = "basic";
    std::vector<int> params;
    std::vector<std::string> bench_inputs;
    unsigned long long seed = 1;
    int girth = 0, h = -1;

    auto add_solver_flags = [&](CLI::App* cmd) {
        cmd->add_option("--algo", flags.algo, "auto|oracle|branch|tfree|pseudochordal|deg2")
            ->default_val("auto");
        cmd->add_option("--oracle-limit", flags.oracle_limit, "max vertices for the oracle");
        cmd->add_option("--threads", flags.threads, "seed-edge search workers");
        cmd->add_flag("--deterministic", flags.deterministic,
                      "byte-identical output (omits wall time)");
        cmd->add_flag("--r10", flags.enable_r10, "enable the extra reduction in the branch solver");
    };

    auto* solve = app.add_subcommand("solve", "decide whether a graph has a perfect matching cut");
    solve->add_option("input", input, "edge-list file, - or absent for stdin");
    add_solver_flags(solve);
    solve->add_flag("--cross-check", cross_check, "run all applicable algorithms and compare");
    solve->add_option("-o,--output", output, "write the result JSON here");

    auto* check = app.add_subcommand("check", "classify a cut certificate");
    check->add_option("graph", input)->required();
    check->add_option("cut", cut_path, "JSON {\"X\": [...], \"Y\": [...]}, 1-based")->required();
    check->add_flag("--json", as_json, "machine-readable output");

    auto* generate = app.add_subcommand("generate", "emit reference instances");
    generate->set_help_flag("--help", "print this help message");
    generate->add_option("kind", kind, "path|cycle|cube|random|random-connected|tree|reduction")
        ->required();
    generate->add_option("params", params, "size parameters (n [m])");
    generate->add_option("--seed", seed, "random seed");
    generate->add_option("--cnf", cnf_path, "formula for kind=reduction");
    generate->add_option("--variant", variant, "basic|girth");
    generate->add_option("--girth", girth, "girth target for the girth variant");
    generate->add_option("--h", h, "subdivision override for the girth variant");
    generate->add_option("-o,--output", output, "write the edge list here");
    generate->add_option("--map", map_path, "write the reduction map sidecar here");

    auto* verify = app.add_subcommand("verify-reduction", "structural checks of a reduction");
    verify->set_help_flag("--help", "print this help message");
    verify->add_option("cnf", cnf_path, "DIMACS CNF file, monotone width-3")->required();
    verify->add_option("--variant", variant, "basic|girth");
    verify->add_option("--girth", girth, "girth target for the girth variant");
    verify->add_option("--h", h, "subdivision override");
    verify->add_flag("--json", as_json, "machine-readable output");

    auto* bench = app.add_subcommand("bench", "timing sweep, CSV output");
    bench->add_option("inputs", bench_inputs, "edge-list files (default: built-in sweep)");
    add_solver_flags(bench);
    bench->add_option("--seed", seed, "random seed for generated instances");
    bench->add_option("-o,--output", output, "write the CSV here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(input, flags, cross_check, output);
        if (check->parsed()) return cmd_check(input, cut_path, as_json);
        if (generate->parsed())
            return cmd_generate(kind, params, seed, cnf_path, variant, girth, h, output, map_path);
        if (verify->parsed()) return cmd_verify_reduction(cnf_path, variant, girth, h, as_json);
        if (bench->parsed()) return cmd_bench(bench_inputs, flags, seed, output);
    } catch (const std::exception& e) {
        die(e.what());
    }
    return 2;
}
