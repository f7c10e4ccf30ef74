// dskernel: kernelization, verification, approximation and table generation for
// Dominating Set and Connected Dominating Set.
//
// Exit codes: 0 kernel emitted (or check passed), 1 NO-certificate (or a verify
// mismatch), 2 input error, 3 internal invariant failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include <dskernel/graph_io.hpp>
#include <dskernel/reducer.hpp>
#include <dskernel/td_io.hpp>

using namespace dskernel;

namespace {

struct RunConfig {
    std::string mode = "kernelize";
    std::string problem = "ds";
    int h = 2;
    int k = -1;
    std::string graph_path;
    std::string td_path;
    std::string tables_path;
    std::string out_prefix;
    std::string kernel_path;
    int k_out = 0;
    bool k_out_given = false;
    std::uint64_t seed = 0;
    int guard_n = default_ds_guard;
    int t = 2;
    int size_limit = 5;
};

Problem parse_problem(const std::string& s)
{
    if (s == "ds") return Problem::DS;
    if (s == "cds") return Problem::CDS;
    throw InputError("unknown problem '" + s + "'");
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    return f;
}

RepresentativeTable load_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_table(in);
}

/// Brute-force membership: exact threshold at most k.
bool member(const Graph& g, int k, Problem p, int guard_n)
{
    if (k < 0) return false;
    detail::guard(g, guard_n, "verify");
    return bruteforce_threshold(g, p) <= k;
}

int run_kernelize(const RunConfig& cfg)
{
    const Problem problem = parse_problem(cfg.problem);
    require_input(cfg.k >= 0, "-k is required and must be non-negative");
    Graph g = load_graph(cfg.graph_path);
    KernelConfig kc;
    kc.h = cfg.h;
    std::optional<RepresentativeTable> table;
    if (!cfg.tables_path.empty()) {
        table = load_table(cfg.tables_path);
        kc.table = &*table;
    }
    if (!cfg.td_path.empty()) kc.td = load_td(cfg.td_path, g);
    auto r = kernelize(g, cfg.k, problem, kc);
    if (cfg.out_prefix.empty()) {
        std::cout << "k' " << r.k << '\n';
        write_graph(std::cout, r.graph);
        write_stats(std::cerr, r);
    } else {
        auto gr = open_out(cfg.out_prefix + ".gr");
        write_graph(gr, r.graph);
        auto kf = open_out(cfg.out_prefix + ".k");
        kf << r.k << '\n';
        auto tr = open_out(cfg.out_prefix + ".trace");
        write_kernel_trace(tr, r);
        auto st = open_out(cfg.out_prefix + ".stats");
        write_stats(st, r);
        st << "seed " << cfg.seed << '\n';
        write_stats(std::cout, r);
    }
    if (r.stats.refusals > 0) std::cerr << "warning: " << r.stats.refusals << " reductions refused\n";
    if (r.no_instance) {
        std::cerr << "NO: " << r.reason << '\n';
        return 1;
    }
    return 0;
}

int run_verify(const RunConfig& cfg)
{
    const Problem problem = parse_problem(cfg.problem);
    Graph g = load_graph(cfg.graph_path);
    detail::guard(g, cfg.guard_n, "verify");
    const int n = g.num_vertices();
    int failures = 0;
    auto report = [&](int k, bool a, bool b) {
        std::cout << (a == b ? "PASS" : "FAIL") << " k=" << k << " input=" << (a ? "yes" : "no")
                  << " kernel=" << (b ? "yes" : "no") << '\n';
        failures += a != b;
    };
    if (!cfg.kernel_path.empty()) {
        // A kernel computed for -k: its shift k' - k must hold for every k.
        require_input(cfg.k >= 0 && cfg.k_out_given, "--kernel needs -k and --k-out");
        Graph kg = load_graph(cfg.kernel_path);
        if (cfg.k_out < 0) {
            report(cfg.k, member(g, cfg.k, problem, cfg.guard_n), false);
        } else {
            const int shift = cfg.k_out - cfg.k;
            for (int k = 0; k <= n; ++k)
                if (k + shift >= 0 || k == cfg.k)
                    report(k, member(g, k, problem, cfg.guard_n), member(kg, k + shift, problem, cfg.guard_n));
        }
    } else {
        KernelConfig kc;
        kc.h = cfg.h;
        for (int k = 0; k <= n; ++k) {
            auto r = kernelize(g, k, problem, kc);
            bool b = !r.no_instance && member(r.graph, r.k, problem, cfg.guard_n);
            report(k, member(g, k, problem, cfg.guard_n), b);
        }
    }
    std::cout << (failures == 0 ? "verify PASS" : "verify FAIL") << '\n';
    return failures == 0 ? 0 : 1;
}

int run_approx(const RunConfig& cfg)
{
    const Problem problem = parse_problem(cfg.problem);
    Graph g = load_graph(cfg.graph_path);
    TreeDecomposition td = cfg.td_path.empty() ? heuristic_decomposition(g) : load_td(cfg.td_path, g);
    const int h = std::max(cfg.h, adhesion(td));
    auto r = approximate(g, td, h, problem);
    std::cout << "size " << r.solution.size() << '\n'
              << "h " << h << '\n'
              << "empirical " << (r.empirical ? 1 : 0) << '\n'
              << "solution";
    for (Vertex v : r.solution) std::cout << ' ' << v + 1;
    std::cout << '\n';
    write_trace(std::cout, r);
    return 0;
}

int run_tables(const RunConfig& cfg)
{
    const Problem problem = parse_problem(cfg.problem);
    auto table = enumerate_representatives(cfg.t, cfg.size_limit, problem);
    if (cfg.out_prefix.empty()) {
        write_table(std::cout, table);
        std::cerr << "classes " << table.size() << " xi " << table.xi() << '\n';
    } else {
        auto f = open_out(cfg.out_prefix);
        write_table(f, table);
        std::cout << "classes " << table.size() << " xi " << table.xi() << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Linear kernels for (connected) dominating set"};
    app.set_help_flag("--help", "Print this help message and exit");
    RunConfig cfg;
    app.add_option("--mode", cfg.mode, "kernelize | verify | approx | tables")
        ->check(CLI::IsMember({"kernelize", "verify", "approx", "tables"}));
    app.add_option("--problem", cfg.problem, "ds | cds")->check(CLI::IsMember({"ds", "cds"}));
    app.add_option("--h", cfg.h, "adhesion parameter")->check(CLI::PositiveNumber);
    app.add_option("-k", cfg.k, "solution size parameter");
    app.add_option("--graph", cfg.graph_path, "input graph (.gr)");
    app.add_option("--td", cfg.td_path, "tree decomposition of the input graph");
    app.add_option("--tables", cfg.tables_path, "representative table fixture");
    app.add_option("--out", cfg.out_prefix, "output prefix (kernelize) or file (tables)");
    app.add_option("--kernel", cfg.kernel_path, "kernel graph to verify against the input");
    auto* kout = app.add_option("--k-out", cfg.k_out, "parameter of the kernel given with --kernel");
    app.add_option("--seed", cfg.seed, "seed recorded with the stats");
    app.add_option("--guard-n", cfg.guard_n, "vertex limit for brute-force solvers")->check(CLI::PositiveNumber);
    app.add_option("--t", cfg.t, "boundary size for tables");
    app.add_option("--size-limit", cfg.size_limit, "largest enumerated graph for tables");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    cfg.k_out_given = kout->count() > 0;
    try {
        if (cfg.mode != "tables") require_input(!cfg.graph_path.empty(), "--graph is required");
        if (cfg.mode == "kernelize") return run_kernelize(cfg);
        if (cfg.mode == "verify") return run_verify(cfg);
        if (cfg.mode == "approx") return run_approx(cfg);
        return run_tables(cfg);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const GuardError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return 2;
    } catch (const InvariantError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
