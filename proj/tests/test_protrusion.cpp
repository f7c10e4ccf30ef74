#include <doctest.h>

#include <random>

#include <dskernel/generators.hpp>
#include <dskernel/approx.hpp>
#include <dskernel/protrusion.hpp>
#include <dskernel/slicedec.hpp>

#include "oracles.hpp"

using namespace dskernel;

namespace {

/// Triangle 0-1-2 with a path of `len` vertices hanging at vertex 0.
Graph triangle_with_tail(int len)
{
    std::vector<std::pair<Vertex, Vertex>> e{{0, 1}, {1, 2}, {0, 2}};
    Vertex prev = 0;
    for (int i = 0; i < len; ++i) {
        e.emplace_back(prev, 3 + i);
        prev = 3 + i;
    }
    return Graph(3 + len, e);
}

/// Two triangles joined by a path with `len` inner vertices.
Graph dumbbell(int len)
{
    std::vector<std::pair<Vertex, Vertex>> e{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
    Vertex prev = 2;
    for (int i = 0; i < len; ++i) {
        e.emplace_back(prev, 6 + i);
        prev = 6 + i;
    }
    e.emplace_back(prev, 3);
    return Graph(6 + len, e);
}

const RepresentativeTable& ds_table()
{
    static const RepresentativeTable t = enumerate_representatives(2, 5, Problem::DS);
    return t;
}

void check_answers(const Graph& g, int k, const Graph& g2, int k2)
{
    const int a = oracle::gamma(g), b = oracle::gamma(g2);
    for (int j = 0; j <= g.num_vertices(); ++j) CHECK((a <= j) == (b <= j + (k2 - k)));
}

} // namespace

TEST_CASE("verify_protrusion examples")
{
    Graph g = triangle_with_tail(5);
    VertexSet tail{3, 4, 5, 6, 7};
    Protrusion p{tail, {3}, ProtrusionKind::ds_protrusion, 2, {4, 6}};
    CHECK(verify_protrusion(g, p).ok());
    p.r = 1;
    CHECK(verify_protrusion(g, p).verdict == Verdict::invalid);
    Protrusion whole{g.vertices(), {}, ProtrusionKind::tw_protrusion, heuristic_decomposition(g).width(), {}};
    CHECK(verify_protrusion(g, whole).ok());
    Protrusion wrong{tail, {}, ProtrusionKind::ds_protrusion, 2, {4, 6}};
    CHECK(verify_protrusion(g, wrong).verdict == Verdict::invalid);
    Protrusion cds{tail, {3}, ProtrusionKind::cds_protrusion, 3, {4, 5, 6}};
    CHECK(verify_protrusion(g, cds).ok());
    cds.witness = {4, 6};
    cds.r = 2;
    CHECK(verify_protrusion(g, cds).verdict == Verdict::invalid);
}

TEST_CASE("replace_ds_protrusion")
{
    const auto& table = ds_table();
    SUBCASE("pendant path shrinks and keeps the answer")
    {
        Graph g = triangle_with_tail(5);
        VertexSet x{0, 3, 4, 5, 6, 7};
        Protrusion p{x, {0}, ProtrusionKind::ds_protrusion, 3, {0, 4, 6}};
        auto r = replace_ds_protrusion(g, p, table, 4);
        CHECK(r.graph.num_vertices() < g.num_vertices());
        CHECK(r.constant <= 0);
        check_answers(g, 4, r.graph, r.k);
    }
    SUBCASE("a representative is left as it is")
    {
        // Pendant edge at vertex 0 of a triangle: the part {0, 3} is already minimal.
        Graph g = triangle_with_tail(1);
        Protrusion p{{0, 3}, {0}, ProtrusionKind::ds_protrusion, 2, {0}};
        auto r = replace_ds_protrusion(g, p, table, 2);
        CHECK(r.graph.num_vertices() == g.num_vertices());
        CHECK(r.k == 2);
        CHECK_THROWS_AS(replace_ds_protrusion(g, p, table, 2, true), IncompletenessError);
    }
    SUBCASE("boundary beyond the table")
    {
        Graph g = dumbbell(6);
        VertexSet x{2, 3, 6, 7, 8, 9, 10, 11};
        Protrusion p{x, boundary_of(g, x), ProtrusionKind::ds_protrusion, 4, {2, 3, 7, 10}};
        REQUIRE(p.boundary.size() == 2);
        auto t1 = enumerate_representatives(1, 3, Problem::DS);
        CHECK_THROWS_AS(replace_ds_protrusion(g, p, t1, 3), GuardError);
    }
}

TEST_CASE("replace_tw_protrusion")
{
    const auto& table = ds_table();
    Graph g = dumbbell(9);
    VertexSet x{2, 3};
    for (int i = 0; i < 9; ++i) x.push_back(6 + i);
    x = make_set(x);
    Protrusion p{x, {2, 3}, ProtrusionKind::tw_protrusion, 2, {}};
    auto r = replace_tw_protrusion(g, p, table, 5);
    CHECK(r.graph.num_vertices() < g.num_vertices());
    CHECK(oracle::gamma(g) == oracle::gamma(r.graph) - r.constant);
    check_answers(g, 5, r.graph, r.k);

    Graph k4 = complete_graph(4);
    Protrusion narrow{{0, 1, 2, 3}, {}, ProtrusionKind::tw_protrusion, 2, {}};
    CHECK(verify_protrusion(k4, narrow).verdict == Verdict::unverified);
    CHECK_THROWS_AS(replace_tw_protrusion(k4, narrow, table, 1), IncompletenessError);
}

TEST_CASE("replacements preserve the answer on planted instances")
{
    const auto& table = ds_table();
    int replaced = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(seed);
        Graph base = bounded_degree_graph(6 + static_cast<int>(seed % 4), 3, seed, 0.5, true);
        // Plant a tail or a bridge of degree-two vertices.
        auto edges = base.edge_list();
        int n = base.num_vertices();
        const int len = 4 + static_cast<int>(rng() % 5);
        Vertex a = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n)), b = -1;
        if (seed % 2) b = static_cast<Vertex>((a + 1 + rng() % static_cast<std::uint64_t>(n - 1)) % n);
        Vertex prev = a;
        for (int i = 0; i < len; ++i) {
            edges.emplace_back(prev, n + i);
            prev = n + i;
        }
        if (b >= 0) edges.emplace_back(prev, b);
        Graph g(n + len, edges);
        for (const auto& p : degree_two_chains(g, table.xi())) {
            if (p.boundary.size() > 2) continue;
            try {
                auto r = replace_tw_protrusion(g, p, table, n, true);
                check_answers(g, n, r.graph, r.k);
                CHECK(r.constant <= 0);
                ++replaced;
            } catch (const IncompletenessError&) {
            }
        }
    }
    CHECK(replaced > 50);
}

TEST_CASE("find_large_ds_protrusion")
{
    // Path with a long tail: every light subtree is the tail.
    Graph g = triangle_with_tail(12);
    auto td = heuristic_decomposition(g);
    const int h = std::max(2, adhesion(td));
    VertexSet d = *ds_opt_bruteforce(g, g.num_vertices());
    CHECK_FALSE(find_large_ds_protrusion(g, td, d, h, g.num_vertices()));
    auto p = find_large_ds_protrusion(g, td, d, h, 4);
    REQUIRE(p);
    CHECK(p->vertices.size() > 4);
    CHECK(verify_protrusion(g, *p).ok());
    auto any = find_large_ds_protrusion(g, td, d, h, 0);
    REQUIRE(any);
    CHECK_FALSE(any->vertices.empty());

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Graph r = random_planar(16, seed);
        auto rtd = heuristic_decomposition(r);
        int rh = std::max(1, adhesion(rtd));
        auto rd = approximate(r, rtd, rh, Problem::DS);
        auto found = find_large_ds_protrusion(r, rtd, rd.solution, rh, static_cast<int>(seed % 5));
        if (found) CHECK(verify_protrusion(r, *found).ok());
    }
}
