#pragma once

// Deterministic instance families for tests and benchmarks.

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>

#include "graph.hpp"

namespace dskernel {

enum class Family { path, cycle, grid, subdivided_clique, random_planar, bounded_degree, random_tree };

struct InstanceParams {
    int n = 0;          // path, cycle, random_planar, bounded_degree, random_tree
    int rows = 0;       // grid
    int cols = 0;       // grid
    int h = 0;          // subdivided_clique: clique order
    int ell = 0;        // subdivided_clique: internal vertices per edge
    int max_degree = 4; // bounded_degree
    double density = 0.5; // probability of keeping a non-tree edge
    bool connected = true;
};

namespace detail {

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

inline bool coin(std::mt19937_64& rng, double p)
{
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0) < p;
}

} // namespace detail

inline Graph path_graph(int n)
{
    require_input(n >= 0, "path needs n >= 0");
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e);
}

inline Graph cycle_graph(int n)
{
    require_input(n >= 3, "cycle needs n >= 3");
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, e);
}

inline Graph star_graph(int leaves)
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return Graph(leaves + 1, e);
}

inline Graph complete_graph(int n)
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, e);
}

inline Graph grid_graph(int rows, int cols)
{
    require_input(rows >= 1 && cols >= 1, "grid needs positive dimensions");
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            int v = r * cols + c;
            if (c + 1 < cols) e.emplace_back(v, v + 1);
            if (r + 1 < rows) e.emplace_back(v, v + cols);
        }
    return Graph(rows * cols, e);
}

/// K_h with every edge replaced by a path through `ell` new vertices.
inline Graph subdivided_clique(int h, int ell)
{
    require_input(h >= 1 && ell >= 0, "subdivided clique needs h >= 1, ell >= 0");
    std::vector<std::pair<Vertex, Vertex>> e;
    int next = h;
    for (int a = 0; a < h; ++a)
        for (int b = a + 1; b < h; ++b) {
            int prev = a;
            for (int i = 0; i < ell; ++i) {
                e.emplace_back(prev, next);
                prev = next++;
            }
            e.emplace_back(prev, b);
        }
    return Graph(next, e);
}

/// Random recursive tree: vertex v attaches to a uniformly chosen earlier vertex.
inline Graph random_tree(int n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int v = 1; v < n; ++v) e.emplace_back(static_cast<Vertex>(detail::draw(rng, v)), v);
    return Graph(std::max(n, 0), e);
}

/// Planar graph: a random stacked triangulation thinned to a spanning tree plus a
/// `density` fraction of the remaining edges.
inline Graph random_planar(int n, std::uint64_t seed, double density = 0.5)
{
    require_input(n >= 1, "random planar needs n >= 1");
    std::mt19937_64 rng(seed);
    if (n <= 3) return n == 3 && detail::coin(rng, density) ? cycle_graph(3) : path_graph(n);
    std::vector<std::array<Vertex, 3>> faces{{0, 1, 2}, {0, 1, 2}};
    std::vector<std::pair<Vertex, Vertex>> all{{0, 1}, {1, 2}, {0, 2}};
    std::vector<std::pair<Vertex, Vertex>> tree{{0, 1}, {1, 2}};
    for (Vertex v = 3; v < n; ++v) {
        auto fi = detail::draw(rng, faces.size());
        auto f = faces[fi];
        for (Vertex u : f) all.emplace_back(u, v);
        tree.emplace_back(f[detail::draw(rng, 3)], v);
        faces[fi] = {f[0], f[1], v};
        faces.push_back({f[1], f[2], v});
        faces.push_back({f[0], f[2], v});
    }
    std::set<std::pair<Vertex, Vertex>> keep;
    for (auto [u, v] : tree) keep.insert({std::min(u, v), std::max(u, v)});
    for (auto [u, v] : all)
        if (detail::coin(rng, density)) keep.insert({std::min(u, v), std::max(u, v)});
    return Graph(n, {keep.begin(), keep.end()});
}

/// Random graph of maximum degree `max_degree`; connected (via a degree-bounded
/// random spanning tree) when `connected` is set.
inline Graph bounded_degree_graph(int n, int max_degree, std::uint64_t seed, double density = 0.5,
                                  bool connected = true)
{
    require_input(n >= 1 && max_degree >= 2, "bounded degree needs n >= 1 and degree >= 2");
    std::mt19937_64 rng(seed);
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    std::set<std::pair<Vertex, Vertex>> edges;
    auto add = [&](Vertex u, Vertex v) {
        if (u == v || deg[u] >= max_degree || deg[v] >= max_degree) return false;
        if (!edges.insert({std::min(u, v), std::max(u, v)}).second) return false;
        ++deg[u];
        ++deg[v];
        return true;
    };
    if (connected) {
        for (Vertex v = 1; v < n; ++v) {
            std::vector<Vertex> open;
            for (Vertex u = 0; u < v; ++u)
                if (deg[u] < max_degree) open.push_back(u);
            add(open[detail::draw(rng, open.size())], v);
        }
    }
    auto attempts = static_cast<int>(density * n * max_degree);
    for (int i = 0; i < attempts; ++i)
        add(static_cast<Vertex>(detail::draw(rng, n)), static_cast<Vertex>(detail::draw(rng, n)));
    return Graph(n, {edges.begin(), edges.end()});
}

inline Graph generate_instance(Family family, const InstanceParams& p, std::uint64_t seed)
{
    switch (family) {
    case Family::path: return path_graph(p.n);
    case Family::cycle: return cycle_graph(p.n);
    case Family::grid: return grid_graph(p.rows, p.cols);
    case Family::subdivided_clique: return subdivided_clique(p.h, p.ell);
    case Family::random_planar: return random_planar(p.n, seed, p.density);
    case Family::bounded_degree: return bounded_degree_graph(p.n, p.max_degree, seed, p.density, p.connected);
    case Family::random_tree: return random_tree(p.n, seed);
    }
    throw InputError("unknown instance family");
}

inline Family parse_family(const std::string& name)
{
    if (name == "path") return Family::path;
    if (name == "cycle") return Family::cycle;
    if (name == "grid") return Family::grid;
    if (name == "subdivided_clique") return Family::subdivided_clique;
    if (name == "random_planar") return Family::random_planar;
    if (name == "bounded_degree") return Family::bounded_degree;
    if (name == "random_tree") return Family::random_tree;
    throw InputError("unknown instance family: " + name);
}

} // namespace dskernel
