#pragma once

// Irrelevant-vertex rule with feasible apex subsets, balanced separators, piece
// reducers and the kernelization driver for DS and CDS.

#include <chrono>
#include <mutex>

#include "approx.hpp"
#include "slicedec.hpp"

namespace dskernel {

// ---------------------------------------------------------------------------
// Feasible apex subsets and the irrelevant-vertex rule

struct ApexOptions {
    int apex_guard = 8;
    int exact_guard = default_inner_exact_guard;
};

/// Subsets of the apex set A are bit masks over `apex` (bit i = apex[i]).
struct ApexContext {
    VertexSet apex;
    VertexSet s;
    int budget = 0;                                  // 2(|S| + 2)
    std::vector<char> feasible;                      // per mask
    std::vector<std::optional<VertexSet>> witness;   // D(A') when one was found
    std::vector<Vertex> representative;              // smallest v with A' ⊆ N[v], or -1
    VertexSet representatives_r;

    VertexSet subset(std::uint32_t mask) const
    {
        VertexSet out;
        for (std::size_t i = 0; i < apex.size(); ++i)
            if (mask >> i & 1) out.push_back(apex[i]);
        return out;
    }

    bool complete() const
    {
        for (std::size_t m = 0; m < feasible.size(); ++m)
            if (feasible[m] && !witness[m]) return false;
        return true;
    }
};

namespace detail {

/// Greedy packing of targets with pairwise disjoint closed neighbourhoods; a lower
/// bound on any dominating set of the targets.
inline int packing_lower_bound(const Graph& g, const VertexSet& targets)
{
    std::vector<char> used(static_cast<std::size_t>(g.num_vertices()), 0);
    int count = 0;
    for (Vertex t : targets) {
        auto nt = closed_neighborhood(g, t);
        bool free = true;
        for (Vertex u : nt) free = free && !used[u];
        if (!free) continue;
        for (Vertex u : nt) used[u] = 1;
        ++count;
    }
    return count;
}

} // namespace detail

/// A' is feasible unless every D with D ∩ A = A' dominating V \ (A ∪ S) is provably
/// larger than 2(|S| + 2). Feasibility is decided exactly on small graphs; larger ones
/// use a greedy witness or, failing that, a packing lower bound (erring towards
/// feasible, which only makes the rule more conservative).
inline ApexContext feasible_subsets(const Graph& g, const VertexSet& s, const VertexSet& a, const ApexOptions& opt = {})
{
    check_members(g, s);
    check_members(g, a);
    if (static_cast<int>(a.size()) > opt.apex_guard)
        throw GuardError("apex set of size " + std::to_string(a.size()) + " exceeds the guard");
    ApexContext ctx;
    ctx.apex = make_set(a);
    ctx.s = make_set(s);
    ctx.budget = 2 * (static_cast<int>(ctx.s.size()) + 2);
    const std::uint32_t subsets = 1u << ctx.apex.size();
    ctx.feasible.assign(subsets, 0);
    ctx.witness.assign(subsets, std::nullopt);
    ctx.representative.assign(subsets, -1);
    const VertexSet targets_all = set_difference(g.vertices(), set_union(ctx.apex, ctx.s));
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        VertexSet chosen = ctx.subset(mask), banned = set_difference(ctx.apex, chosen);
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (auto [u, v] : g.edge_list())
            if (!set_contains(banned, u) && !set_contains(banned, v)) edges.emplace_back(u, v);
        Graph cut(g.num_vertices(), edges);
        auto inst = ColoredInstance::from_partition(cut, chosen, set_difference(set_union(ctx.s, ctx.apex), chosen),
                                                    targets_all);
        int rest = ctx.budget - static_cast<int>(chosen.size());
        if (rest < 0) continue;
        auto res = inner_two_approx(inst, rest, opt.exact_guard);
        if (res.set) {
            ctx.feasible[mask] = 1;
            ctx.witness[mask] = set_union(chosen, *res.set);
        } else if (!res.exact) {
            ctx.feasible[mask] = detail::packing_lower_bound(cut, inst.targets()) <= rest;
        }
        for (Vertex v = 0; v < g.num_vertices() && ctx.representative[mask] < 0; ++v)
            if (set_subset(chosen, closed_neighborhood(g, v))) ctx.representative[mask] = v;
        if (ctx.representative[mask] >= 0) ctx.representatives_r.push_back(ctx.representative[mask]);
    }
    ctx.representatives_r = make_set(ctx.representatives_r);
    return ctx;
}

/// Vertices w outside S, A and R whose closed neighbourhood minus A lies in
/// N(A') \ A for every feasible A'.
inline VertexSet irrelevant_vertices(const Graph& g, const ApexContext& ctx)
{
    std::vector<VertexSet> w_sets;
    for (std::uint32_t m = 0; m < ctx.feasible.size(); ++m)
        if (ctx.feasible[m]) w_sets.push_back(set_difference(open_neighborhood(g, ctx.subset(m)), ctx.apex));
    VertexSet out;
    for (Vertex w = 0; w < g.num_vertices(); ++w) {
        if (set_contains(ctx.s, w) || set_contains(ctx.apex, w) || set_contains(ctx.representatives_r, w)) continue;
        auto nw = set_difference(closed_neighborhood(g, w), ctx.apex);
        bool all = true;
        for (const auto& ws : w_sets) all = all && set_subset(nw, ws);
        if (all) out.push_back(w);
    }
    return out;
}

struct PassResult {
    MappedGraph graph;
    VertexSet removed;   // ids in the input graph
};

/// One simultaneous sweep removing up to `limit` irrelevant vertices (lowest ids
/// first); limit < 0 means |S| + 4, the largest batch the rule tolerates.
inline PassResult irrelevant_vertex_pass(const Graph& g, const ApexContext& ctx, int limit = -1)
{
    require_input(is_dominating_set(g, ctx.s), "S must dominate the graph");
    if (limit < 0) limit = static_cast<int>(ctx.s.size()) + 4;
    auto found = irrelevant_vertices(g, ctx);
    if (static_cast<int>(found.size()) > limit) found.resize(static_cast<std::size_t>(limit));
    return {remove_vertices(g, found), found};
}

struct RuleOptions {
    ApexOptions apex;
    bool sequential = false;   // one removal per recomputation
};

/// Applies the rule until no vertex is irrelevant, recomputing feasibility after
/// every pass. S and A are given in g's ids.
inline PassResult apply_irrelevant_vertex_rule(const Graph& g, const VertexSet& s, const VertexSet& a,
                                               const RuleOptions& opt = {})
{
    MappedGraph cur{g, {}};
    cur.origin.resize(static_cast<std::size_t>(g.num_vertices()));
    std::iota(cur.origin.begin(), cur.origin.end(), 0);
    VertexSet removed;
    for (;;) {
        std::vector<Vertex> local(static_cast<std::size_t>(g.num_vertices()), -1);
        for (std::size_t i = 0; i < cur.origin.size(); ++i) local[cur.origin[i]] = static_cast<Vertex>(i);
        VertexSet ls, la;
        for (Vertex v : s) ls.push_back(local[v]);
        for (Vertex v : a) la.push_back(local[v]);
        auto ctx = feasible_subsets(cur.graph, make_set(ls), make_set(la), opt.apex);
        auto pass = irrelevant_vertex_pass(cur.graph, ctx, opt.sequential ? 1 : -1);
        if (pass.removed.empty()) break;
        for (Vertex v : pass.removed) removed.push_back(cur.origin[v]);
        std::vector<Vertex> origin;
        for (Vertex v : pass.graph.origin) origin.push_back(cur.origin[v]);
        cur = MappedGraph{std::move(pass.graph.graph), std::move(origin)};
    }
    return {std::move(cur), make_set(removed)};
}

struct TwoDomWitness {
    VertexSet q;
    bool checked = false;   // false when some feasible subset has no stored witness
    long long bound = 0;    // 2^|A| (2|S| + 2) + 2^|A| + |S|
};

/// Q = (union of D(A') over feasible A') ∪ R ∪ S minus A; on an irreducible instance
/// every vertex outside A is within distance two of Q in G - A.
inline TwoDomWitness two_dom_witness(const Graph& g, const ApexContext& ctx)
{
    TwoDomWitness out;
    VertexSet q = set_union(ctx.representatives_r, ctx.s);
    for (std::size_t m = 0; m < ctx.feasible.size(); ++m)
        if (ctx.feasible[m] && ctx.witness[m]) q = set_union(q, *ctx.witness[m]);
    out.q = set_difference(q, ctx.apex);
    const long long p = 1LL << ctx.apex.size();
    out.bound = p * (2 * static_cast<long long>(ctx.s.size()) + 2) + p + static_cast<long long>(ctx.s.size());
    if (!ctx.complete()) return out;
    auto rest = remove_vertices(g, ctx.apex);
    std::vector<Vertex> local(static_cast<std::size_t>(g.num_vertices()), -1);
    for (std::size_t i = 0; i < rest.origin.size(); ++i) local[rest.origin[i]] = static_cast<Vertex>(i);
    VertexSet lq;
    for (Vertex v : out.q) lq.push_back(local[v]);
    ensure(r_dominates(rest.graph, make_set(lq), rest.graph.vertices(), 2),
           "irreducible instance is not 2-dominated by the witness");
    out.checked = true;
    return out;
}

// ---------------------------------------------------------------------------
// Balanced separators

struct Separator {
    Node node = -1;
    VertexSet x, v1, v2;
    int w_total = 0, w_x = 0, w1 = 0, w2 = 0;
    bool band_ok = false;   // both sides within [(w - w(X))/3, 2(w - w(X))/3]
};

namespace detail {

inline bool in_band(int side, int rest) { return 3 * side >= rest && 3 * side <= 2 * rest; }

/// Groups component weights into two sides; greedy first, exhaustive when that
/// misses the band and there are at most 20 weighted components.
inline std::vector<int> group_components(const std::vector<int>& weight, int rest, bool& ok)
{
    const std::size_t c = weight.size();
    std::vector<std::size_t> order(c);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return weight[a] > weight[b]; });
    std::vector<int> side(c, 0);
    int s1 = 0, s2 = 0;
    for (std::size_t i : order) {
        if (s1 <= s2) {
            side[i] = 0;
            s1 += weight[i];
        } else {
            side[i] = 1;
            s2 += weight[i];
        }
    }
    ok = in_band(s1, rest) && in_band(s2, rest);
    if (ok) return side;
    std::vector<std::size_t> heavy;
    for (std::size_t i = 0; i < c; ++i)
        if (weight[i] > 0) heavy.push_back(i);
    if (heavy.size() > 20) return side;
    for (std::uint32_t m = 0; m < (1u << heavy.size()); ++m) {
        int a = 0;
        for (std::size_t j = 0; j < heavy.size(); ++j)
            if (m >> j & 1) a += weight[heavy[j]];
        if (in_band(a, rest) && in_band(rest - a, rest)) {
            std::fill(side.begin(), side.end(), 1);
            for (std::size_t j = 0; j < heavy.size(); ++j)
                if (m >> j & 1) side[heavy[j]] = 0;
            ok = true;
            return side;
        }
    }
    return side;
}

} // namespace detail

/// A bag X with every component of G - X of weight at most w(V)/2, components grouped
/// into two sides. Bags whose grouping meets the band win over those that do not;
/// within each group the smallest max(w1, w2) + |X| wins, then preorder. With
/// `prefer_progress`, bags leaving some non-empty side with fewer than w(V) boundary
/// vertices (w_i + |X| < w) come first.
inline Separator balanced_separator(const TreeDecomposition& td, const VertexSet& weighted,
                                    bool prefer_progress = false)
{
    const Graph& g = td.host();
    check_members(g, weighted);
    const int w = static_cast<int>(weighted.size());
    std::optional<Separator> best;
    for (Node t : td.preorder()) {
        Separator sep;
        sep.node = t;
        sep.x = td.bag(t);
        sep.w_total = w;
        sep.w_x = static_cast<int>(set_intersection(sep.x, weighted).size());
        auto comps = components_of(g, set_difference(g.vertices(), sep.x));
        std::vector<int> cw;
        bool balanced = true;
        for (const auto& c : comps) {
            cw.push_back(static_cast<int>(set_intersection(c, weighted).size()));
            balanced = balanced && 2 * cw.back() <= w;
        }
        if (!balanced) continue;
        const int rest = w - sep.w_x;
        bool ok = false;
        auto side = detail::group_components(cw, rest, ok);
        for (std::size_t i = 0; i < comps.size(); ++i) {
            auto& target = side[i] == 0 ? sep.v1 : sep.v2;
            target = set_union(target, comps[i]);
            (side[i] == 0 ? sep.w1 : sep.w2) += cw[i];
        }
        sep.band_ok = ok;
        auto score = [&](const Separator& x) {
            const int bx = static_cast<int>(x.x.size());
            int least = w;
            if (!x.v1.empty()) least = std::min(least, x.w1 + bx);
            if (!x.v2.empty()) least = std::min(least, x.w2 + bx);
            return std::tuple{prefer_progress && least >= w, !x.band_ok, std::max(x.w1, x.w2) + bx};
        };
        if (!best || score(sep) < score(*best)) best = std::move(sep);
    }
    ensure(best.has_value(), "no bag separates the weight evenly");
    return *best;
}

// ---------------------------------------------------------------------------
// Piece reducers

struct PieceResult {
    BoundariedGraph graph;
    int constant = 0;
    int irrelevant_removed = 0;
    int replacements = 0;
    std::vector<std::string> refusals;
};

struct PieceOptions {
    RuleOptions rule;
    bool use_irrelevant_rule = true;
    int max_depth = 12;
};

namespace detail {

/// Boundaried view of g[keep] whose labels are the vertices of `boundary` in order.
inline BoundariedGraph boundaried_view(const Graph& g, const VertexSet& keep, const VertexSet& boundary, int t)
{
    auto sub = induced_subgraph(g, keep);
    std::vector<Vertex> lv(static_cast<std::size_t>(t), -1);
    for (std::size_t i = 0; i < boundary.size(); ++i)
        lv[i] = static_cast<Vertex>(std::lower_bound(keep.begin(), keep.end(), boundary[i]) - keep.begin());
    return BoundariedGraph(std::move(sub.graph), t, lv);
}

/// Replaces x (labelled by part_labels) inside host by `with`; host labels keep their
/// numbers. Also returns, per new vertex, its id in host (-1 when new).
inline std::pair<BoundariedGraph, std::vector<Vertex>> replace_in_piece(const BoundariedGraph& host, const VertexSet& x,
                                                                        const std::vector<Vertex>& part_labels,
                                                                        const BoundariedGraph& with)
{
    auto r = replace(host.graph(), x, part_labels, with);
    std::vector<Vertex> back(static_cast<std::size_t>(host.num_vertices()), -1);
    for (std::size_t i = 0; i < r.origin.size(); ++i)
        if (r.origin[i] >= 0) back[r.origin[i]] = static_cast<Vertex>(i);
    std::vector<Vertex> lv;
    for (Vertex v : host.label_vertices()) lv.push_back(v >= 0 ? back[v] : -1);
    return {BoundariedGraph(std::move(r.graph), host.capacity(), lv), std::move(r.origin)};
}

/// Table replacements inside a piece, restricted to parts whose interior avoids the
/// piece boundary. Repeats until nothing shrinks.
inline void replace_inner_protrusions(PieceResult& res, const RepresentativeTable& table, int h)
{
    const int xi = table.xi();
    for (bool changed = true; changed;) {
        changed = false;
        const Graph& pg = res.graph.graph();
        const VertexSet s = res.graph.boundary();
        auto td = heuristic_decomposition(pg);
        auto cands = degree_two_chains(pg, xi);
        for (auto& p : small_boundary_parts(pg, td, table.t, xi, h + xi)) cands.push_back(std::move(p));
        for (const auto& p : cands) {
            if (!set_intersection(set_difference(p.vertices, p.boundary), s).empty()) continue;
            try {
                auto rep = replace_protrusion(pg, p, table, 0, true);
                std::vector<Vertex> back(static_cast<std::size_t>(pg.num_vertices()), -1);
                for (std::size_t i = 0; i < rep.origin.size(); ++i)
                    if (rep.origin[i] >= 0) back[rep.origin[i]] = static_cast<Vertex>(i);
                std::vector<Vertex> lv;
                for (Vertex v : res.graph.label_vertices()) lv.push_back(v >= 0 ? back[v] : -1);
                res.graph = BoundariedGraph(std::move(rep.graph), res.graph.capacity(), lv);
                res.constant += rep.constant;
                ++res.replacements;
                changed = true;
                break;
            } catch (const IncompletenessError& e) {
                res.refusals.emplace_back(e.what());
            } catch (const GuardError& e) {
                res.refusals.emplace_back(e.what());
            }
        }
    }
}

} // namespace detail

/// Irrelevant-vertex rule with the high-degree vertices as apices, then table
/// replacement of inner protrusions. The boundary S of `piece` must dominate it.
inline PieceResult reduce_bounded_degree_piece(const BoundariedGraph& piece, int h_prime, const RepresentativeTable& table,
                                               const PieceOptions& opt = {})
{
    const Graph& g = piece.graph();
    const VertexSet s = piece.boundary();
    require_input(is_dominating_set(g, s), "piece boundary must dominate the piece");
    PieceResult res{piece, 0, 0, 0, {}};
    if (opt.use_irrelevant_rule && table.problem == Problem::DS) {
        std::vector<Vertex> high;
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            if (g.degree(v) > h_prime) high.push_back(v);
        std::stable_sort(high.begin(), high.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
        if (static_cast<int>(high.size()) > opt.rule.apex.apex_guard) {
            res.refusals.push_back("too many high-degree vertices for the apex guard");
        } else {
            auto pass = apply_irrelevant_vertex_rule(g, s, make_set(high), opt.rule);
            if (!pass.removed.empty()) {
                std::vector<Vertex> back(static_cast<std::size_t>(g.num_vertices()), -1);
                for (std::size_t i = 0; i < pass.graph.origin.size(); ++i)
                    back[pass.graph.origin[i]] = static_cast<Vertex>(i);
                std::vector<Vertex> lv;
                for (Vertex v : piece.label_vertices()) lv.push_back(v >= 0 ? back[v] : -1);
                res.graph = BoundariedGraph(std::move(pass.graph.graph), piece.capacity(), lv);
                res.irrelevant_removed = static_cast<int>(pass.removed.size());
            }
        }
    }
    detail::replace_inner_protrusions(res, table, h_prime);
    return res;
}

/// Base case: a piece whose boundary fits the table is replaced whole. Otherwise a
/// balanced separator X (weights on S) splits it into G[V1 ∪ X] and G[V2 ∪ X] with
/// boundaries (S ∩ Vi) ∪ X, reduced recursively and glued back.
inline PieceResult reduce_separator_recursive(const BoundariedGraph& piece, const RepresentativeTable& table,
                                              const PieceOptions& opt = {}, int depth = 0)
{
    const Graph& g = piece.graph();
    const VertexSet s = piece.boundary();
    require_input(is_dominating_set(g, s), "piece boundary must dominate the piece");
    PieceResult res{piece, 0, 0, 0, {}};
    if (static_cast<int>(s.size()) <= table.t) {
        auto view = detail::boundaried_view(g, g.vertices(), s, table.t);
        try {
            auto cls = table.find_class(signature(view, table.problem));
            if (!cls || table.reps[*cls].num_vertices() >= g.num_vertices()) return res;
            auto r = reduce_via_representatives(view, table);
            if (r.constant > 0) {
                res.refusals.emplace_back("replacement would raise the parameter");
                return res;
            }
            // Relabel the representative onto the piece's own label numbers.
            std::vector<Vertex> lv(static_cast<std::size_t>(piece.capacity()), -1);
            for (std::size_t i = 0; i < s.size(); ++i) lv[piece.label_of(s[i]) - 1] = r.graph.vertex_of(static_cast<int>(i) + 1);
            res.graph = BoundariedGraph(r.graph.graph(), piece.capacity(), lv);
            res.constant = r.constant;
            res.replacements = 1;
        } catch (const IncompletenessError& e) {
            res.refusals.emplace_back(e.what());
        }
        return res;
    }
    if (depth >= opt.max_depth) return res;
    auto sep = balanced_separator(heuristic_decomposition(g), s, true);
    // Sides are rewritten one after the other; X and S survive every rewrite, and the
    // two sides' interiors are disjoint, so ids of the untouched side stay valid.
    std::vector<Vertex> now(static_cast<std::size_t>(g.num_vertices()));
    std::iota(now.begin(), now.end(), 0);
    for (const VertexSet* side : {&sep.v1, &sep.v2}) {
        if (side->empty()) continue;
        VertexSet keep = set_union(*side, sep.x);
        VertexSet sub_s = set_union(set_intersection(s, *side), sep.x);
        if (sub_s.size() >= s.size()) continue;
        VertexSet keep_now, sub_now;
        for (Vertex v : keep) keep_now.push_back(now[v]);
        for (Vertex v : sub_s) sub_now.push_back(now[v]);
        keep_now = make_set(keep_now);
        sub_now = make_set(sub_now);
        const int t = static_cast<int>(sub_now.size());
        auto view = detail::boundaried_view(res.graph.graph(), keep_now, sub_now, t);
        auto sub = reduce_separator_recursive(view, table, opt, depth + 1);
        res.refusals.insert(res.refusals.end(), sub.refusals.begin(), sub.refusals.end());
        if (sub.replacements == 0) continue;
        std::vector<Vertex> labels(sub_now.begin(), sub_now.end());
        auto [next, origin] = detail::replace_in_piece(res.graph, keep_now, labels, sub.graph);
        std::vector<Vertex> back(static_cast<std::size_t>(res.graph.num_vertices()), -1);
        for (std::size_t i = 0; i < origin.size(); ++i)
            if (origin[i] >= 0) back[origin[i]] = static_cast<Vertex>(i);
        for (auto& v : now) v = v >= 0 ? back[v] : -1;
        res.graph = std::move(next);
        res.constant += sub.constant;
        res.replacements += sub.replacements;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Kernelization driver

/// Representative tables for t <= 2 and parts of at most five vertices, built once.
inline const RepresentativeTable& default_table(Problem problem)
{
    static const RepresentativeTable ds = enumerate_representatives(2, 5, Problem::DS);
    static const RepresentativeTable cds = enumerate_representatives(2, 5, Problem::CDS);
    return problem == Problem::DS ? ds : cds;
}

struct TraceEntry {
    std::string rule;
    std::string location;
    int removed = 0;
    int constant = 0;
    int n_before = 0;
    int n_after = 0;
};

struct KernelStats {
    int n_in = 0, m_in = 0, n_out = 0, m_out = 0;
    int h_eff = 0;
    int approx_size = 0;
    bool approx_empirical = false;
    int slices = 0;            // alpha of the last slice decomposition
    int boundary_budget = 0;   // its boundary budget
    int steps = 0;
    int refusals = 0;
    double delta = 0;          // n_out / approx_size
    double seconds = 0;
};

struct ReductionOutcome {
    Graph graph;
    int k = 0;
    int original_k = 0;
    bool no_instance = false;
    std::string reason;
    std::vector<Vertex> origin;   // kernel vertex -> input vertex, -1 for new vertices
    std::vector<TraceEntry> trace;
    KernelStats stats;

    int cumulative_constant() const
    {
        int c = 0;
        for (const auto& t : trace) c += t.constant;
        return c;
    }
};

struct KernelConfig {
    int h = 2;
    const RepresentativeTable* table = nullptr;   // default_table(problem) when null
    std::optional<TreeDecomposition> td;          // decomposition of the input graph
    PieceOptions piece;
    bool cds_irrelevant_rule = false;
    int inner_exact_guard = default_inner_exact_guard;
};

inline void write_kernel_trace(std::ostream& out, const ReductionOutcome& r)
{
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
        const auto& t = r.trace[i];
        out << "step " << i << " rule " << t.rule << " at " << t.location << " removed " << t.removed << " constant "
            << t.constant << " n " << t.n_before << " " << t.n_after << '\n';
    }
}

inline void write_stats(std::ostream& out, const ReductionOutcome& r)
{
    const auto& s = r.stats;
    out << "status " << (r.no_instance ? "no" : "kernel") << '\n'
        << "n_in " << s.n_in << '\n'
        << "m_in " << s.m_in << '\n'
        << "k_in " << r.original_k << '\n'
        << "n_out " << s.n_out << '\n'
        << "m_out " << s.m_out << '\n'
        << "k_out " << r.k << '\n'
        << "h_eff " << s.h_eff << '\n'
        << "approx " << s.approx_size << '\n'
        << "approx_empirical " << (s.approx_empirical ? 1 : 0) << '\n'
        << "alpha " << s.slices << '\n'
        << "budget " << s.boundary_budget << '\n'
        << "steps " << s.steps << '\n'
        << "refusals " << s.refusals << '\n'
        << "delta " << s.delta << '\n';
    if (r.no_instance) out << "reason " << r.reason << '\n';
}

namespace detail {

inline std::string describe(const VertexSet& boundary, const std::vector<Vertex>& origin)
{
    std::string s = "boundary";
    if (boundary.empty()) s += " -";
    for (Vertex v : boundary) s += ' ' + (origin[v] >= 0 ? std::to_string(origin[v] + 1) : std::string("new"));
    return s;
}

} // namespace detail

/// Kernel (G', k') with (G, k) in the problem iff (G', k') is, or a NO outcome.
/// Every rewrite is a certified table replacement or an irrelevant-vertex removal;
/// anything the tables do not cover is left unreduced.
inline ReductionOutcome kernelize(const Graph& g, int k, Problem problem, const KernelConfig& cfg = {})
{
    const auto start = std::chrono::steady_clock::now();
    ReductionOutcome out;
    out.original_k = k;
    out.stats.n_in = g.num_vertices();
    out.stats.m_in = g.num_edges();
    auto finish = [&](ReductionOutcome& r) {
        r.stats.n_out = r.graph.num_vertices();
        r.stats.m_out = r.graph.num_edges();
        r.stats.delta = r.stats.approx_size > 0 ? static_cast<double>(r.stats.n_out) / r.stats.approx_size : 0.0;
        r.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return r;
    };
    auto no = [&](std::string reason) {
        out.no_instance = true;
        out.reason = std::move(reason);
        out.graph = Graph(0);
        out.origin.clear();
        out.k = -1;
        return finish(out);
    };
    require_input(cfg.h >= 1, "h must be positive");
    out.graph = g;
    out.k = k;
    out.origin.resize(static_cast<std::size_t>(g.num_vertices()));
    std::iota(out.origin.begin(), out.origin.end(), 0);
    if (k < 0) return no("negative parameter");
    if (g.empty()) return finish(out);
    if (problem == Problem::CDS && !is_connected(g)) return no("disconnected graph has no connected dominating set");

    const TreeDecomposition td = cfg.td ? *cfg.td : heuristic_decomposition(g);
    require_input(td.host() == g, "decomposition is for a different graph");
    const int h_eff = std::max(cfg.h, adhesion(td));
    out.stats.h_eff = h_eff;
    auto approx = approximate(g, td, h_eff, problem, cfg.inner_exact_guard);
    out.stats.approx_size = static_cast<int>(approx.solution.size());
    out.stats.approx_empirical = approx.empirical;
    const long long limit = static_cast<long long>(problem == Problem::DS ? eta(h_eff) : 3 * eta(h_eff)) * k;
    if (static_cast<long long>(approx.solution.size()) > limit) {
        if (!approx.empirical)
            return no("approximate solution of size " + std::to_string(approx.solution.size()) + " exceeds " +
                      std::to_string(limit));
        out.trace.push_back({"approx-bound-unverified", "-", 0, 0, g.num_vertices(), g.num_vertices()});
    }

    const RepresentativeTable& table = cfg.table ? *cfg.table : default_table(problem);
    require_input(table.problem == problem, "table is for the other problem");
    const int xi = table.xi();
    PieceOptions popt = cfg.piece;
    popt.use_irrelevant_rule = popt.use_irrelevant_rule && (problem == Problem::DS || cfg.cds_irrelevant_rule);

    auto apply = [&](ReplaceResult&& r, std::string rule, std::string where, int constant) {
        const int before = out.graph.num_vertices();
        std::vector<Vertex> origin;
        for (Vertex v : r.origin) origin.push_back(v >= 0 ? out.origin[v] : -1);
        out.graph = std::move(r.graph);
        out.origin = std::move(origin);
        out.k += constant;
        out.trace.push_back({std::move(rule), std::move(where), before - out.graph.num_vertices(), constant, before,
                             out.graph.num_vertices()});
        ++out.stats.steps;
        ensure(out.stats.steps <= out.stats.n_in, "more rewrites than input vertices");
    };

    for (;;) {
        if (out.k < 0) return no("parameter dropped below zero");
        const Graph cur = out.graph;
        if (cur.empty()) break;
        auto td_c = heuristic_decomposition(cur);
        const int h_c = std::max(cfg.h, adhesion(td_c));
        auto d = approximate(cur, td_c, h_c, Problem::DS, cfg.inner_exact_guard).solution;
        auto mt = mark_heavy_edges(td_c, d, h_c);

        bool applied = false;
        for (const auto& p : protrusion_candidates(cur, mt, xi, SliceOptions{table.t, nullptr})) {
            if (static_cast<int>(p.boundary.size()) > table.t) {
                ++out.stats.refusals;
                continue;
            }
            try {
                auto rep = replace_protrusion(cur, p, table, out.k, true);
                apply(ReplaceResult{std::move(rep.graph), std::move(rep.origin)},
                      std::string("replace-") + kind_name(p.kind), detail::describe(p.boundary, out.origin),
                      rep.constant);
                applied = true;
                break;
            } catch (const IncompletenessError&) {
                ++out.stats.refusals;
            } catch (const GuardError&) {
                ++out.stats.refusals;
            }
        }
        if (applied) continue;

        auto sd = slice_decomposition(cur, mt);
        out.stats.slices = static_cast<int>(sd.slices.size());
        out.stats.boundary_budget = sd.boundary_budget;
        bool changed = false;
        std::vector<Vertex> now(static_cast<std::size_t>(cur.num_vertices()));
        std::iota(now.begin(), now.end(), 0);
        for (const auto& slice : sd.slices) {
            VertexSet verts, bnd;
            for (Vertex v : slice.vertices) verts.push_back(now[v]);
            for (Vertex v : slice.boundary) bnd.push_back(now[v]);
            verts = make_set(verts);
            bnd = make_set(bnd);
            if (verts.size() == bnd.size()) continue;
            const int t = static_cast<int>(bnd.size());
            auto piece = detail::boundaried_view(out.graph, verts, bnd, t);
            const int h_prime = h_c + xi;
            int high = 0;
            for (Vertex v = 0; v < piece.num_vertices(); ++v) high += piece.graph().degree(v) > h_prime;
            auto res = high <= h_prime ? reduce_bounded_degree_piece(piece, h_prime, table, popt)
                                       : reduce_separator_recursive(piece, table, popt);
            out.stats.refusals += static_cast<int>(res.refusals.size());
            if (res.graph.num_vertices() >= piece.num_vertices()) continue;
            const std::string rule = high <= h_prime ? "piece-bounded-degree" : "piece-separator";
            const std::string where = "slice " + detail::describe(bnd, out.origin);
            std::vector<Vertex> labels(bnd.begin(), bnd.end());
            auto r = replace(out.graph, verts, labels, res.graph);
            std::vector<Vertex> back(static_cast<std::size_t>(out.graph.num_vertices()), -1);
            for (std::size_t i = 0; i < r.origin.size(); ++i)
                if (r.origin[i] >= 0) back[r.origin[i]] = static_cast<Vertex>(i);
            for (auto& v : now) v = v >= 0 ? back[v] : -1;
            apply(std::move(r), rule, where, res.constant);
            changed = true;
        }
        if (!changed) break;
    }
    if (out.k < 0) return no("parameter dropped below zero");
    return finish(out);
}

} // namespace dskernel
