#include <doctest.h>

#include <random>

#include <dskernel/generators.hpp>
#include <dskernel/reducer.hpp>

#include "oracles.hpp"

using namespace dskernel;

namespace {

/// Naive feasibility: some D with D ∩ A = A', |D| <= 2(|S| + 2), dominating V \ (A ∪ S).
bool feasible_naive(const Graph& g, const VertexSet& s, const VertexSet& a, const VertexSet& chosen)
{
    const int budget = 2 * (static_cast<int>(s.size()) + 2);
    const VertexSet targets = set_difference(g.vertices(), set_union(a, s));
    const VertexSet pool = set_difference(g.vertices(), a);
    for (int size = 0; size + static_cast<int>(chosen.size()) <= budget && size <= static_cast<int>(pool.size());
         ++size) {
        bool found = false;
        oracle::for_each_subset(static_cast<int>(pool.size()), size, [&](const VertexSet& idx) {
            VertexSet d = chosen;
            for (int i : idx) d.push_back(pool[i]);
            found = oracle::dominates(g, make_set(d), targets);
            return found;
        });
        if (found) return true;
    }
    return false;
}

Graph star_with_leaves(int leaves) { return star_graph(leaves); }

/// Vertices sorted by decreasing degree, first `count` of them.
VertexSet top_degree(const Graph& g, int count)
{
    std::vector<Vertex> order = g.vertices();
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    order.resize(static_cast<std::size_t>(std::min<int>(count, g.num_vertices())));
    return make_set(order);
}

} // namespace

TEST_CASE("feasible apex subsets")
{
    SUBCASE("no apices")
    {
        Graph g = random_planar(10, 2);
        auto s = *ds_opt_bruteforce(g, 10);
        auto ctx = feasible_subsets(g, s, {});
        REQUIRE(ctx.feasible.size() == 1);
        CHECK(ctx.feasible[0]);
        CHECK(ctx.complete());
    }
    SUBCASE("agrees with naive enumeration")
    {
        std::mt19937_64 rng(5);
        for (std::uint64_t seed = 0; seed < 60; ++seed) {
            Graph g = seed % 2 ? random_planar(11, seed) : bounded_degree_graph(11, 4, seed, 0.5, true);
            VertexSet s = *ds_opt_bruteforce(g, 11);
            VertexSet a = top_degree(g, 1 + static_cast<int>(seed % 3));
            auto ctx = feasible_subsets(g, s, a);
            for (std::uint32_t m = 0; m < ctx.feasible.size(); ++m) {
                VertexSet chosen = ctx.subset(m);
                CHECK(static_cast<bool>(ctx.feasible[m]) == feasible_naive(g, s, a, chosen));
                if (ctx.witness[m]) CHECK(set_intersection(*ctx.witness[m], a) == chosen);
            }
            std::uint32_t sa = 0;
            for (std::size_t i = 0; i < ctx.apex.size(); ++i)
                if (set_contains(s, ctx.apex[i])) sa |= 1u << i;
            CHECK(ctx.feasible[sa]);
        }
    }
    SUBCASE("guard")
    {
        Graph g = complete_graph(10);
        CHECK_THROWS_AS(feasible_subsets(g, {0}, g.vertices()), GuardError);
    }
}

TEST_CASE("irrelevant vertices on a star")
{
    Graph g = star_with_leaves(8);
    auto ctx = feasible_subsets(g, {0}, {0});
    CHECK_FALSE(ctx.feasible[0]);
    CHECK(ctx.feasible[1]);
    CHECK(irrelevant_vertices(g, ctx).size() == 8);

    auto pass = irrelevant_vertex_pass(g, ctx);
    CHECK(pass.removed == VertexSet{1, 2, 3, 4, 5});
    auto all = apply_irrelevant_vertex_rule(g, {0}, {0});
    CHECK(all.removed.size() == 5);
    CHECK(all.graph.graph.num_vertices() == 4);
    CHECK(oracle::gamma(all.graph.graph) == oracle::gamma(g));

    auto before = BoundariedGraph::from_boundary(g, {0});
    auto after = BoundariedGraph::from_boundary(all.graph.graph, {0});
    auto verdict = definitional_equivalence_oracle(before, after, 5, Problem::DS);
    CHECK(verdict.accepts(0));
    CHECK(signatures_equivalent(signature(before, Problem::DS), signature(after, Problem::DS)) == 0);

    auto w = two_dom_witness(all.graph.graph, feasible_subsets(all.graph.graph, {0}, {0}));
    CHECK(w.checked);
}

TEST_CASE("irrelevant-vertex rule preserves the domination number")
{
    int removed_total = 0;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        Graph base = seed % 2 ? random_planar(13, seed) : bounded_degree_graph(13, 5, seed, 0.6, true);
        // Attach twin leaves to the hub so the rule has something to find.
        auto edges = base.edge_list();
        const Vertex hub = top_degree(base, 1)[0];
        const int extra = static_cast<int>(seed % 6);
        for (int i = 0; i < extra; ++i) edges.emplace_back(hub, 13 + i);
        Graph g(13 + extra, edges);
        VertexSet s = *ds_opt_bruteforce(g, g.num_vertices());
        VertexSet a = top_degree(g, 2);
        const int gamma = oracle::gamma(g);

        auto batch = apply_irrelevant_vertex_rule(g, s, a);
        RuleOptions seq_opt;
        seq_opt.sequential = true;
        auto seq = apply_irrelevant_vertex_rule(g, s, a, seq_opt);
        for (const auto* r : {&batch, &seq}) {
            CHECK(oracle::gamma(r->graph.graph) == gamma);
            CHECK(set_intersection(r->removed, set_union(s, a)).empty());
            VertexSet ls, la;
            for (std::size_t i = 0; i < r->graph.origin.size(); ++i) {
                if (set_contains(s, r->graph.origin[i])) ls.push_back(static_cast<Vertex>(i));
                if (set_contains(a, r->graph.origin[i])) la.push_back(static_cast<Vertex>(i));
            }
            auto ctx = feasible_subsets(r->graph.graph, ls, la);
            CHECK(irrelevant_vertices(r->graph.graph, ctx).empty());
            auto w = two_dom_witness(r->graph.graph, ctx);
            CHECK(w.checked);
            CHECK(static_cast<long long>(w.q.size()) <= w.bound);
        }
        removed_total += static_cast<int>(batch.removed.size());
    }
    CHECK(removed_total > 0);
}

TEST_CASE("balanced separators")
{
    SUBCASE("path")
    {
        Graph p = path_graph(9);
        auto sep = balanced_separator(heuristic_decomposition(p), p.vertices());
        CHECK(sep.band_ok);
        CHECK(set_union(set_union(sep.v1, sep.v2), sep.x) == p.vertices());
        CHECK(set_intersection(sep.v1, sep.v2).empty());
        CHECK(sep.w1 + sep.w2 + sep.w_x == 9);
    }
    SUBCASE("a decomposition where no bag meets the band")
    {
        // K4 on 0..3, a path 0-4-5-6-7-8, and a pendant 9 at vertex 1.
        std::vector<std::pair<Vertex, Vertex>> e{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                                 {0, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {1, 9}};
        Graph g(10, e);
        TreeDecomposition td(g, {{0, 1, 2, 3}, {0, 4, 5, 6, 7, 8}, {1, 9}}, {{0, 1}, {0, 2}}, 0);
        auto sep = balanced_separator(td, g.vertices());
        CHECK_FALSE(sep.band_ok);
        CHECK(sep.node == 0);
        CHECK(2 * sep.w1 <= sep.w_total);
        CHECK(2 * sep.w2 <= sep.w_total);
    }
    SUBCASE("every component holds at most half the weight")
    {
        std::mt19937_64 rng(3);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            Graph g = random_planar(25, seed, 0.35);
            VertexSet w;
            for (Vertex v = 0; v < 25; ++v)
                if (rng() % 3 == 0) w.push_back(v);
            auto sep = balanced_separator(heuristic_decomposition(g), w);
            for (const auto& c : components_of(g, set_difference(g.vertices(), sep.x)))
                CHECK(2 * static_cast<int>(set_intersection(c, w).size()) <= static_cast<int>(w.size()));
            for (auto [u, v] : g.edge_list())
                CHECK_FALSE(((set_contains(sep.v1, u) && set_contains(sep.v2, v)) ||
                             (set_contains(sep.v2, u) && set_contains(sep.v1, v))));
            if (sep.band_ok) {
                const int rest = sep.w_total - sep.w_x;
                CHECK(3 * sep.w1 >= rest);
                CHECK(3 * sep.w1 <= 2 * rest);
            }
        }
    }
}

TEST_CASE("piece reducers keep the boundary behaviour")
{
    const auto& table = default_table(Problem::DS);
    int shrunk = 0;   // informational: dominated random pieces rarely have room
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Graph g = seed % 2 ? random_tree(20, seed) : bounded_degree_graph(20, 3, seed, 0.4, true);
        auto s = approximate(g, heuristic_decomposition(g), std::max(2, adhesion(heuristic_decomposition(g))),
                             Problem::DS)
                     .solution;
        if (s.size() > 6) s.resize(6);
        s = make_set(set_union(s, {}));
        if (!is_dominating_set(g, s)) continue;
        auto piece = BoundariedGraph::from_boundary(g, s);
        auto bd = reduce_bounded_degree_piece(piece, 3, table);
        auto sep = reduce_separator_recursive(piece, table);
        const auto sig = signature(piece, Problem::DS);
        for (const auto* r : {&bd, &sep}) {
            CHECK(r->graph.boundary().size() == s.size());
            CHECK(signatures_equivalent(sig, signature(r->graph, Problem::DS)) == r->constant);
            shrunk += r->graph.num_vertices() < piece.num_vertices();
        }
    }
    (void)shrunk;

    // Caterpillar: spine c0..c3, four leaves per spine vertex, boundary the spine.
    std::vector<std::pair<Vertex, Vertex>> e{{0, 1}, {1, 2}, {2, 3}};
    for (Vertex c = 0; c < 4; ++c)
        for (int i = 0; i < 4; ++i) e.emplace_back(c, 4 + 4 * c + i);
    auto cat = BoundariedGraph::from_boundary(Graph(20, e), {0, 1, 2, 3});
    const auto cat_sig = signature(cat, Problem::DS);
    auto sep = reduce_separator_recursive(cat, table);
    CHECK(sep.replacements > 0);
    CHECK(sep.graph.num_vertices() < cat.num_vertices());
    CHECK(signatures_equivalent(cat_sig, signature(sep.graph, Problem::DS)) == sep.constant);

    // With 13 leaves per spine vertex only A' = A is feasible, so every leaf is irrelevant.
    std::vector<std::pair<Vertex, Vertex>> e2{{0, 1}, {1, 2}, {2, 3}};
    for (Vertex c = 0; c < 4; ++c)
        for (int i = 0; i < 13; ++i) e2.emplace_back(c, 4 + 13 * c + i);
    auto big = BoundariedGraph::from_boundary(Graph(56, e2), {0, 1, 2, 3});
    auto bd = reduce_bounded_degree_piece(big, 3, table);
    CHECK(bd.irrelevant_removed > 0);
    CHECK(bd.graph.num_vertices() < big.num_vertices());
    CHECK(signatures_equivalent(signature(big, Problem::DS), signature(bd.graph, Problem::DS)) == bd.constant);
}

TEST_CASE("kernelize")
{
    CHECK(kernelize(path_graph(4), 0, Problem::DS).no_instance);
    CHECK(kernelize(path_graph(4), -1, Problem::DS).no_instance);

    auto small = kernelize(complete_graph(3), 1, Problem::DS);
    CHECK_FALSE(small.no_instance);
    CHECK(small.graph == complete_graph(3));
    CHECK(small.k == 1);

    auto disc = kernelize(Graph(3), 3, Problem::CDS);
    CHECK(disc.no_instance);

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Graph g = seed % 2 ? random_tree(16, seed) : random_planar(16, seed, 0.3);
        const int gamma = oracle::gamma(g);
        int last_kprime = -2;
        for (int k = 0; k <= 8; ++k) {
            auto r = kernelize(g, k, Problem::DS);
            const bool yes = gamma <= k;
            if (r.no_instance) {
                CHECK_FALSE(yes);
                continue;
            }
            CHECK(r.k - k == r.cumulative_constant());
            CHECK(r.graph.num_vertices() <= g.num_vertices());
            CHECK((r.graph.empty() ? r.k >= 0 : oracle::gamma(r.graph) <= r.k) == yes);
            CHECK(r.k >= last_kprime);
            last_kprime = r.k;
            CHECK(r.origin.size() == static_cast<std::size_t>(r.graph.num_vertices()));
        }
    }
}
