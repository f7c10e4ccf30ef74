#pragma once

// Constant-factor approximation for coloured domination driven by a tree
// decomposition, connectivity augmentation for connected domination.

#include <ostream>
#include <string>

#include "solvers.hpp"
#include "treedec.hpp"

namespace dskernel {

inline constexpr int default_inner_exact_guard = 20;

/// Approximation factor for adhesion h.
inline int eta(int h) { return 5 * h; }

struct InnerResult {
    std::optional<VertexSet> set;
    bool exact = false;
};

/// Factor-two coloured domination: exact below `exact_guard` vertices, otherwise
/// greedy, in which case the answer is returned only if it fits the budget.
inline InnerResult inner_two_approx(const ColoredInstance& inst, int size_budget,
                                    int exact_guard = default_inner_exact_guard)
{
    if (inst.graph.num_vertices() <= exact_guard)
        return {colored_ds_opt(inst, std::max(size_budget, -1), std::max(exact_guard, 0)), true};
    const Graph& g = inst.graph;
    std::vector<char> open(static_cast<std::size_t>(g.num_vertices()), 0), allowed(open.size(), 0);
    int remaining = 0;
    for (Vertex v : inst.targets()) {
        open[v] = 1;
        ++remaining;
    }
    for (Vertex v : set_union(inst.y, inst.z)) allowed[v] = 1;
    VertexSet d;
    while (remaining > 0) {
        Vertex best = -1;
        int gain_best = 0;
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            if (!allowed[v]) continue;
            int gain = open[v];
            for (Vertex u : g.neighbors(v)) gain += open[u];
            if (gain > gain_best) {
                best = v;
                gain_best = gain;
            }
        }
        if (best < 0) return {std::nullopt, false};
        d.push_back(best);
        allowed[best] = 0;
        remaining -= open[best];
        open[best] = 0;
        for (Vertex u : g.neighbors(best)) {
            remaining -= open[u];
            open[u] = 0;
        }
        if (static_cast<int>(d.size()) > size_budget) return {std::nullopt, false};
    }
    return {make_set(std::move(d)), false};
}

enum class ApproxCase { low_high_degree, minor_structured };

struct TraceRecord {
    Node node = -1;
    Vertex trigger = -1;      // an undominated vertex whose peak is `node`
    ApproxCase which = ApproxCase::low_high_degree;
    int x_star = 0;           // |W u sigma(t)| in the low/high-degree case
    int z_star = 0;           // |Z*| in the low/high-degree case
    int inner = 0;            // |D| from the inner solver in the minor-structured case
    VertexSet added;          // vertices newly placed into X
};

struct ApproxResult {
    VertexSet solution;
    std::vector<TraceRecord> trace;
    bool empirical = false;   // some inner call fell back to greedy
    VertexSet connectors;     // vertices added by connectivity augmentation
};

inline void write_trace(std::ostream& out, const ApproxResult& r)
{
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
        const auto& t = r.trace[i];
        out << "iter " << i << " node " << t.node << " case "
            << (t.which == ApproxCase::low_high_degree ? "deg" : "minor") << " added " << t.added.size() << '\n';
    }
}

/// Returns D within Y u Z with X u D dominating Z. `td` must decompose inst.graph
/// with adhesion at most h.
inline ApproxResult approx_colored_ds(const ColoredInstance& inst, const TreeDecomposition& td, int h,
                                      int exact_guard = default_inner_exact_guard)
{
    const Graph& g = inst.graph;
    require_input(h >= 1, "adhesion parameter must be positive");
    require_input(td.host() == g, "decomposition is for a different graph");
    auto report = validate(td, false);
    require_input(report.ok, "invalid decomposition: " + report.summary());
    require_input(adhesion(td) <= h, "decomposition adhesion " + std::to_string(adhesion(td)) + " exceeds h = " +
                                         std::to_string(h));
    const int n = g.num_vertices();
    std::vector<char> in_x(static_cast<std::size_t>(n), 0), in_z(in_x.size(), 0);
    for (Vertex v : inst.x) in_x[v] = 1;
    for (Vertex v : inst.targets()) in_z[v] = 1;
    ApproxResult result;
    std::vector<Node> peak(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) peak[v] = td.peak(v);

    auto add_to_x = [&](const VertexSet& s, TraceRecord& rec) {
        for (Vertex v : s)
            if (!in_x[v]) {
                in_x[v] = 1;
                rec.added.push_back(v);
            }
    };
    for (;;) {
        Node t = -1;
        Vertex trigger = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (!in_z[v]) continue;
            Node p = peak[v];
            if (t < 0 || td.depth(p) > td.depth(t) || (td.depth(p) == td.depth(t) && p < t)) {
                t = p;
                trigger = v;
            }
        }
        if (t < 0) break;
        const VertexSet& bag = td.bag(t);
        const VertexSet sigma = td.sigma(t);
        TraceRecord rec;
        rec.node = t;
        rec.trigger = trigger;
        auto type = node_type(td, t, h);
        if (type.tag == NodeTag::low_high_degree) {
            rec.which = ApproxCase::low_high_degree;
            auto torso = td.torso(t);
            VertexSet w;
            for (Vertex i = 0; i < torso.graph.num_vertices(); ++i)
                if (torso.graph.degree(i) > h) w.push_back(torso.origin[i]);
            VertexSet x_star = set_union(w, sigma);
            auto dominated = open_neighborhood(g, x_star);
            VertexSet z_star;
            for (Vertex v : set_difference(bag, dominated))
                if (in_z[v]) z_star.push_back(v);
            rec.x_star = static_cast<int>(x_star.size());
            rec.z_star = static_cast<int>(z_star.size());
            ensure(rec.x_star <= 2 * h, "low/high-degree step chose more than 2h vertices");
            add_to_x(set_union(x_star, z_star), rec);
        } else {
            rec.which = ApproxCase::minor_structured;
            auto local = induced_subgraph(g, bag);
            VertexSet lx, ly, lz;
            for (Vertex i = 0; i < local.graph.num_vertices(); ++i) {
                Vertex v = local.origin[i];
                (in_x[v] ? lx : in_z[v] ? lz : ly).push_back(i);
            }
            auto sub = ColoredInstance::from_partition(local.graph, lx, ly, lz);
            auto inner = inner_two_approx(sub, local.graph.num_vertices(), exact_guard);
            ensure(inner.set.has_value(), "inner solver failed on a feasible instance");
            result.empirical = result.empirical || !inner.exact;
            rec.inner = static_cast<int>(inner.set->size());
            add_to_x(set_union(sigma, local.lift(*inner.set)), rec);
        }
        // Recompute Y = N(X) \ X and Z = V \ (X u Y); the update only removes vertices from Z.
        std::vector<char> new_z(static_cast<std::size_t>(n), 0);
        int before = 0, after = 0;
        for (Vertex v = 0; v < n; ++v) {
            before += in_z[v];
            if (!in_z[v] || in_x[v]) continue;
            bool dominated = false;
            for (Vertex u : g.neighbors(v)) dominated = dominated || in_x[u];
            new_z[v] = !dominated;
            after += new_z[v];
        }
        ensure(after < before, "approximation step made no progress");
        in_z.swap(new_z);
        rec.added = make_set(std::move(rec.added));
        result.trace.push_back(std::move(rec));
    }
    VertexSet solution;
    for (Vertex v = 0; v < n; ++v)
        if (in_x[v]) solution.push_back(v);
    result.solution = set_difference(solution, inst.x);
    ensure(inst.is_solution(result.solution), "approximation output does not dominate Z");
    return result;
}

/// Union of the vertices added over a trace.
inline VertexSet replay_trace(const ApproxResult& r)
{
    VertexSet acc;
    for (const auto& rec : r.trace) acc = set_union(acc, rec.added);
    return set_union(acc, r.connectors);
}

/// Extra vertices Z with q u Z connected and dominating; |Z| <= 2(components - 1).
inline VertexSet duchet_connect(const Graph& g, const VertexSet& q)
{
    require_input(is_connected(g), "connectivity augmentation needs a connected graph");
    check_members(g, q);
    require_input(is_dominating_set(g, q), "set to connect must dominate the graph");
    const auto rho = components_of(g, q).size();
    VertexSet current = q, extra;
    for (;;) {
        auto comps = components_of(g, current);
        if (comps.size() <= 1) break;
        auto others = set_difference(current, comps[0]);
        auto path = shortest_path_between(g, comps[0], others);
        ensure(path.size() >= 2 && path.size() <= 4, "components of a dominating set are at distance at most 3");
        VertexSet inner(path.begin() + 1, path.end() - 1);
        extra = set_union(extra, make_set(inner));
        current = set_union(current, make_set(inner));
    }
    ensure(extra.size() <= 2 * (rho > 0 ? rho - 1 : 0), "connectivity augmentation exceeded 2(rho - 1)");
    return extra;
}

/// Colored approximation on the trivial colouring followed by connectivity augmentation.
inline ApproxResult approx_cds(const Graph& g, const TreeDecomposition& td, int h,
                               int exact_guard = default_inner_exact_guard)
{
    require_input(is_connected(g), "connected domination needs a connected graph");
    auto r = approx_colored_ds(ColoredInstance::from_x(g, {}), td, h, exact_guard);
    r.connectors = duchet_connect(g, r.solution);
    r.solution = set_union(r.solution, r.connectors);
    if (!g.empty()) ensure(is_connected_dominating_set(g, r.solution), "augmented set is not a connected dominating set");
    return r;
}

/// Approximate (connected) dominating set of g.
inline ApproxResult approximate(const Graph& g, const TreeDecomposition& td, int h, Problem problem,
                                int exact_guard = default_inner_exact_guard)
{
    return problem == Problem::DS ? approx_colored_ds(ColoredInstance::from_x(g, {}), td, h, exact_guard)
                                  : approx_cds(g, td, h, exact_guard);
}

} // namespace dskernel
