#include <doctest.h>

#include <sstream>

#include <dskernel/generators.hpp>
#include <dskernel/td_io.hpp>
#include <dskernel/treedec.hpp>

using namespace dskernel;

TEST_CASE("validate")
{
    Graph k1(1);
    CHECK(validate(TreeDecomposition(k1, {{0}}, {})).ok);
    CHECK(validate(TreeDecomposition(path_graph(3), {{0, 1, 2}}, {})).ok);

    Graph edge(2, {{0, 1}});
    auto r = validate(TreeDecomposition(edge, {{0}, {1}}, {{0, 1}}));
    CHECK_FALSE(r.ok);
    CHECK(r.edge_coverage);

    auto tri = cycle_graph(3);
    auto r2 = validate(TreeDecomposition(tri, {{0, 1}, {1, 2}, {0, 2}}, {{0, 1}, {1, 2}}));
    CHECK_FALSE(r2.ok);
    REQUIRE(r2.connectivity);
    CHECK(r2.connectivity->find("vertex 0") != std::string::npos);

    auto r3 = validate(TreeDecomposition(edge, {{0, 1}}, {}));
    CHECK(r3.ok);
    auto r4 = validate(TreeDecomposition(Graph(3), {{0}, {1}}, {{0, 1}}));
    CHECK(r4.coverage);
}

TEST_CASE("derived maps")
{
    TreeDecomposition td(path_graph(3), {{0, 1}, {1, 2}}, {{0, 1}});
    CHECK(td.root() == 0);
    CHECK(td.sigma(0).empty());
    CHECK(td.sigma(1) == VertexSet{1});
    CHECK(td.gamma(1) == VertexSet{1, 2});
    CHECK(td.kappa(0, 1) == VertexSet{1});
    CHECK(td.gamma(td.root()) == VertexSet{0, 1, 2});
    CHECK_THROWS_AS(td.sigma(5), InputError);

    // A leaf torso is the induced subgraph with the parent adhesion completed.
    Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
    TreeDecomposition td2(g, {{0, 1, 2}, {1, 2, 3}}, {{0, 1}});
    auto t1 = td2.torso(1);
    CHECK(t1.origin == VertexSet{1, 2, 3});
    CHECK(t1.graph.num_edges() == 2);
    Graph g3(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    TreeDecomposition td3(g3, {{0, 1, 2}, {1, 2, 3}}, {{0, 1}});
    auto t0 = td3.torso(0);
    CHECK(t0.graph.num_edges() == 3);
    CHECK(t0.graph.has_edge(1, 2));
}

TEST_CASE("normalize")
{
    Graph g(3, {{0, 1}, {1, 2}, {0, 2}});
    auto n1 = normalize(TreeDecomposition(g, {{0, 1}, {0, 1, 2}}, {{0, 1}}));
    CHECK(n1.num_nodes() == 1);
    CHECK(n1.bag(0) == VertexSet{0, 1, 2});

    Graph e(2, {{0, 1}});
    auto n2 = normalize(TreeDecomposition(e, {{0}, {0, 1}, {1}}, {{0, 1}, {1, 2}}));
    CHECK(n2.num_nodes() == 1);
    CHECK(n2.bag(0) == VertexSet{0, 1});
    CHECK(validate(n2).ok);

    auto p = path_graph(5);
    TreeDecomposition already(p, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {{0, 1}, {1, 2}, {2, 3}});
    auto n3 = normalize(already);
    CHECK(n3.bags() == already.bags());
    CHECK(n3.tree_edges() == already.tree_edges());
}

TEST_CASE("heuristic decomposition widths")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto t = random_tree(25, seed);
        auto td = heuristic_decomposition(t);
        CHECK(td.width() == 1);
        CHECK(validate(td).ok);
    }
    for (int n = 3; n < 12; ++n) {
        CHECK(heuristic_decomposition(cycle_graph(n)).width() == 2);
        CHECK(heuristic_decomposition(cycle_graph(n), EliminationStrategy::min_degree).width() == 2);
    }
    CHECK(heuristic_decomposition(grid_graph(3, 3)).width() <= 3);
    CHECK(heuristic_decomposition(Graph(1)).width() == 0);
}

TEST_CASE("decomposition properties on random graphs")
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Graph g = seed % 2 ? random_planar(30, seed) : bounded_degree_graph(30, 4, seed, 0.5, seed % 3 != 0);
        for (auto strategy : {EliminationStrategy::min_fill, EliminationStrategy::min_degree}) {
            auto td = heuristic_decomposition(g, strategy);
            REQUIRE(validate(td).ok);
            CHECK(td.gamma(td.root()) == g.vertices());
            for (auto [p, c] : td.tree_edges()) CHECK(td.sigma(c) == td.kappa(p, c));
            for (Vertex v = 0; v < g.num_vertices(); ++v) {
                Node pk = td.peak(v);
                for (Node t : td.nodes_containing(v)) CHECK(td.is_ancestor(pk, t));
            }
            auto again = normalize(td);
            CHECK(again.bags() == td.bags());
            CHECK(validate(again).ok);
            CHECK(set_contains(td.bag(td.root()), 0));
        }
    }
}

TEST_CASE("classify node")
{
    int h = 1;
    auto star = star_graph(h + 2);
    TreeDecomposition s(star, {star.vertices()}, {});
    CHECK(classify_node(s, 0, h).tag == NodeTag::low_high_degree);

    h = 2;
    auto k = complete_graph(h + 2);
    TreeDecomposition kt(k, {k.vertices()}, {});
    auto type = classify_node(kt, 0, h);
    CHECK(type.tag == NodeTag::minor_structured);
    CHECK(type.apex_set.size() == 2);

    TreeDecomposition single(Graph(1), {{0}}, {});
    CHECK(classify_node(single, 0, 1).tag == NodeTag::low_high_degree);
}

TEST_CASE("peak")
{
    auto p = path_graph(4);
    TreeDecomposition td(p, {{0, 1}, {1, 2}, {2, 3}}, {{0, 1}, {1, 2}});
    CHECK(td.peak(0) == 0);
    CHECK(td.peak(3) == 2);
    CHECK(td.peak(2) == 1);
    CHECK_THROWS_AS(td.peak(9), InputError);
}

TEST_CASE("td file round trip")
{
    auto g = random_planar(15, 2);
    auto td = heuristic_decomposition(g);
    td.set_node_type(0, {NodeTag::minor_structured, {0, 1}});
    std::ostringstream os;
    write_td(os, td);
    std::istringstream is(os.str());
    auto back = read_td(is, g);
    CHECK(back.bags() == td.bags());
    std::ostringstream os2;
    write_td(os2, back);
    CHECK(os2.str() == os.str());
    REQUIRE(back.annotation(0));
    CHECK(back.annotation(0)->apex_set == VertexSet{0, 1});

    std::istringstream bad("s td 2 2 3\nb 1 1 2\nb 2 2 3\n");
    CHECK_THROWS_AS(read_td(bad, path_graph(3)), InputError);
}
