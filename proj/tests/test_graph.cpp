#include <doctest.h>

#include <dskernel/generators.hpp>
#include <dskernel/graph.hpp>
#include <dskernel/graph_io.hpp>

using namespace dskernel;

TEST_CASE("closed neighbourhood")
{
    auto p3 = path_graph(3);
    CHECK(closed_neighborhood(p3, VertexSet{1}) == VertexSet{0, 1, 2});
    CHECK(closed_neighborhood(p3, VertexSet{}).empty());
    auto c5 = cycle_graph(5);
    CHECK(closed_neighborhood(c5, VertexSet{0}) == VertexSet{0, 1, 4});
    CHECK_THROWS_AS(closed_neighborhood(p3, VertexSet{7}), InputError);
}

TEST_CASE("r-dominated set")
{
    auto p5 = path_graph(5);
    CHECK(r_dominated_set(p5, {0}, 2) == VertexSet{0, 1, 2});
    CHECK(r_dominated_set(p5, {2}, 2) == p5.vertices());
    CHECK(r_dominated_set(p5, p5.vertices(), 1) == p5.vertices());
    CHECK_THROWS_AS(r_dominated_set(p5, {0}, 0), InputError);
}

TEST_CASE("domination predicates")
{
    CHECK(is_dominating_set(star_graph(5), {0}));
    auto p4 = path_graph(4);
    CHECK_FALSE(is_dominating_set(p4, {0}));
    CHECK(is_dominating_set(p4, {1, 2}));
    CHECK(is_connected_dominating_set(p4, {1, 2}));
    CHECK_FALSE(is_connected_dominating_set(cycle_graph(6), {0, 3}));
    CHECK(is_connected_dominating_set(Graph(1), {0}));
    CHECK_FALSE(is_connected_dominating_set(Graph(1), {}));
    CHECK_THROWS_AS(is_connected_dominating_set(Graph(2), {0}), InputError);
    CHECK(is_dominating_set(Graph(0), {}));
}

TEST_CASE("graph invariants")
{
    CHECK_THROWS_AS(Graph(2, {{0, 0}}), InputError);
    CHECK_THROWS_AS(Graph(2, {{0, 1}, {1, 0}}), InputError);
    CHECK_THROWS_AS(Graph(2, {{0, 2}}), InputError);
}

TEST_CASE("generators")
{
    auto p4 = generate_instance(Family::path, {.n = 4}, 0);
    CHECK(p4.num_vertices() == 4);
    CHECK(p4.num_edges() == 3);
    auto sk = generate_instance(Family::subdivided_clique, {.h = 4, .ell = 1}, 0);
    CHECK(sk.num_vertices() == 10);
    CHECK(sk.num_edges() == 12);
    auto grid = generate_instance(Family::grid, {.rows = 3, .cols = 3}, 7);
    CHECK(grid.num_vertices() == 9);
    CHECK(grid.num_edges() == 12);
    CHECK_THROWS_AS(generate_instance(Family::cycle, {.n = 2}, 0), InputError);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto a = random_planar(30, seed);
        CHECK(a == random_planar(30, seed));
        CHECK(is_connected(a));
        CHECK(a.num_edges() <= 3 * 30 - 6);
        auto b = bounded_degree_graph(24, 4, seed);
        CHECK(b.max_degree() <= 4);
        CHECK(is_connected(b));
        CHECK(b == bounded_degree_graph(24, 4, seed));
    }
}

TEST_CASE("neighbourhood properties on random graphs")
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto g = random_planar(20, seed);
        VertexSet s;
        for (Vertex v = 0; v < g.num_vertices(); v += 3 + static_cast<int>(seed % 3)) s.push_back(v);
        auto ns = closed_neighborhood(g, s);
        CHECK(set_subset(s, ns));
        CHECK(r_dominated_set(g, s, 1) == ns);
        CHECK(is_dominating_set(g, g.vertices()));
        if (is_dominating_set(g, s)) CHECK(is_dominating_set(g, set_union(s, {0})));
    }
}

TEST_CASE("text format round trip")
{
    const std::string text = "p ds 5 4\ne 1 2\ne 3 2\ne 5 4\ne 1 5\n";
    auto g = graph_from_string(text);
    CHECK(graph_to_string(g) == text);
    auto g2 = graph_from_string("c comment\np ds 3 1\n\ne 1 3\n");
    CHECK(g2.has_edge(0, 2));
    CHECK(graph_to_string(graph_from_string(graph_to_string(random_planar(40, 3)))) ==
          graph_to_string(random_planar(40, 3)));
    CHECK_THROWS_AS(graph_from_string("p ds 2 1\ne 1 3\n"), InputError);
    CHECK_THROWS_AS(graph_from_string("p ds 2 2\ne 1 2\n"), InputError);
    CHECK_THROWS_AS(graph_from_string("e 1 2\n"), InputError);
    CHECK_THROWS_AS(graph_from_string("p ds 2 1\nx 1 2\n"), InputError);
}
