#pragma once

// Simple undirected graphs with dense vertex ids, neighbourhood operators and
// domination predicates.

#include <algorithm>
#include <cstdint>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace dskernel {

using Vertex = int;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

inline VertexSet make_set(std::vector<Vertex> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline bool set_contains(const VertexSet& s, Vertex v)
{
    return std::binary_search(s.begin(), s.end(), v);
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b)
{
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b)
{
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b)
{
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool set_subset(const VertexSet& a, const VertexSet& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Immutable simple undirected graph on vertices 0..n-1.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : adj_(static_cast<std::size_t>(n))
    {
        require_input(n >= 0, "negative vertex count");
    }

    /// Throws InputError on self-loops, out-of-range endpoints or repeated edges.
    Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) : Graph(n)
    {
        edges_.reserve(edges.size());
        for (auto [u, v] : edges) {
            require_input(u >= 0 && u < n && v >= 0 && v < n,
                          "edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
            require_input(u != v, "self-loop on vertex " + std::to_string(u));
            adj_[u].push_back(v);
            adj_[v].push_back(u);
            edges_.emplace_back(u, v);
        }
        for (auto& a : adj_) {
            std::sort(a.begin(), a.end());
            require_input(std::adjacent_find(a.begin(), a.end()) == a.end(), "parallel edge");
        }
    }

    /// Like the edge-list constructor but silently drops loops and repeated edges.
    static Graph from_edges_dedup(int n, std::vector<std::pair<Vertex, Vertex>> edges)
    {
        for (auto& [u, v] : edges)
            if (u > v) std::swap(u, v);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        edges.erase(std::remove_if(edges.begin(), edges.end(), [](auto e) { return e.first == e.second; }),
                    edges.end());
        return Graph(n, edges);
    }

    int num_vertices() const { return static_cast<int>(adj_.size()); }
    std::size_t num_edges() const { return edges_.size(); }
    bool empty() const { return adj_.empty(); }

    const VertexSet& neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
    bool has_vertex(Vertex v) const { return v >= 0 && v < num_vertices(); }
    bool has_edge(Vertex u, Vertex v) const { return has_vertex(u) && set_contains(adj_[u], v); }

    /// Edges in insertion order.
    const std::vector<std::pair<Vertex, Vertex>>& edge_list() const { return edges_; }

    /// Edges as (min, max) pairs in lexicographic order.
    std::vector<std::pair<Vertex, Vertex>> sorted_edges() const
    {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(edges_.size());
        for (Vertex u = 0; u < num_vertices(); ++u)
            for (Vertex v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    VertexSet vertices() const
    {
        VertexSet out(static_cast<std::size_t>(num_vertices()));
        for (int i = 0; i < num_vertices(); ++i) out[i] = i;
        return out;
    }

    int max_degree() const
    {
        int d = 0;
        for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
        return d;
    }

    /// Same vertex and edge sets, ignoring insertion order.
    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
    std::vector<VertexSet> adj_;
    std::vector<std::pair<Vertex, Vertex>> edges_;
};

/// A graph derived from another, with `origin[i]` the id of vertex i in the source graph.
struct MappedGraph {
    Graph graph;
    std::vector<Vertex> origin;

    VertexSet lift(const VertexSet& s) const
    {
        VertexSet out;
        out.reserve(s.size());
        for (Vertex v : s) out.push_back(origin.at(v));
        return make_set(std::move(out));
    }
};

inline void check_members(const Graph& g, const VertexSet& s)
{
    for (Vertex v : s) require_input(g.has_vertex(v), "unknown vertex id " + std::to_string(v));
}

/// Subgraph induced by `keep`; vertex i of the result is keep[i].
inline MappedGraph induced_subgraph(const Graph& g, const VertexSet& keep)
{
    check_members(g, keep);
    std::vector<Vertex> index(static_cast<std::size_t>(g.num_vertices()), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<Vertex>(i);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u : keep)
        for (Vertex v : g.neighbors(u))
            if (u < v && index[v] >= 0) edges.emplace_back(index[u], index[v]);
    return {Graph(static_cast<int>(keep.size()), edges), keep};
}

inline MappedGraph remove_vertices(const Graph& g, const VertexSet& drop)
{
    return induced_subgraph(g, set_difference(g.vertices(), make_set(drop)));
}

inline VertexSet open_neighborhood(const Graph& g, const VertexSet& s)
{
    check_members(g, s);
    std::vector<Vertex> out;
    for (Vertex v : s) out.insert(out.end(), g.neighbors(v).begin(), g.neighbors(v).end());
    return set_difference(make_set(std::move(out)), s);
}

inline VertexSet closed_neighborhood(const Graph& g, const VertexSet& s)
{
    check_members(g, s);
    std::vector<Vertex> out(s.begin(), s.end());
    for (Vertex v : s) out.insert(out.end(), g.neighbors(v).begin(), g.neighbors(v).end());
    return make_set(std::move(out));
}

inline VertexSet closed_neighborhood(const Graph& g, Vertex v) { return closed_neighborhood(g, VertexSet{v}); }

/// BFS distances from a source set; -1 for unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, const VertexSet& sources)
{
    check_members(g, sources);
    std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), -1);
    std::queue<Vertex> q;
    for (Vertex s : sources) {
        dist[s] = 0;
        q.push(s);
    }
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        for (Vertex v : g.neighbors(u))
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
    }
    return dist;
}

/// Vertices at distance at most r from p.
inline VertexSet r_dominated_set(const Graph& g, const VertexSet& p, int r)
{
    require_input(r >= 1, "radius must be positive");
    auto dist = bfs_distances(g, p);
    VertexSet out;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (dist[v] >= 0 && dist[v] <= r) out.push_back(v);
    return out;
}

inline bool is_dominating_set(const Graph& g, const VertexSet& d)
{
    return static_cast<int>(closed_neighborhood(g, d).size()) == g.num_vertices();
}

/// Connected components of g[s], each sorted, ordered by smallest member.
inline std::vector<VertexSet> components_of(const Graph& g, const VertexSet& s)
{
    check_members(g, s);
    std::vector<char> inside(static_cast<std::size_t>(g.num_vertices()), 0), seen(inside.size(), 0);
    for (Vertex v : s) inside[v] = 1;
    std::vector<VertexSet> comps;
    for (Vertex start : s) {
        if (seen[start]) continue;
        VertexSet comp;
        std::vector<Vertex> stack{start};
        seen[start] = 1;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (Vertex v : g.neighbors(u))
                if (inside[v] && !seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

inline std::vector<VertexSet> connected_components(const Graph& g) { return components_of(g, g.vertices()); }

inline bool is_connected_subset(const Graph& g, const VertexSet& s) { return components_of(g, s).size() <= 1; }

inline bool is_connected(const Graph& g) { return is_connected_subset(g, g.vertices()); }

/// Requires g connected. True iff d is nonempty, dominates g and induces a connected subgraph.
inline bool is_connected_dominating_set(const Graph& g, const VertexSet& d)
{
    require_input(is_connected(g), "connected domination is only defined on connected graphs");
    check_members(g, d);
    return !d.empty() && is_dominating_set(g, d) && is_connected_subset(g, d);
}

/// True iff every vertex of `targets` is within distance r of `d`.
inline bool r_dominates(const Graph& g, const VertexSet& d, const VertexSet& targets, int r)
{
    auto dist = bfs_distances(g, d);
    return std::all_of(targets.begin(), targets.end(), [&](Vertex v) { return dist[v] >= 0 && dist[v] <= r; });
}

/// One shortest path (inclusive endpoints) from any vertex of `from` to any vertex of `to`,
/// restricted to vertices flagged in `allowed` (all when empty). Empty if none exists.
inline std::vector<Vertex> shortest_path_between(const Graph& g, const VertexSet& from, const VertexSet& to,
                                                 const std::vector<char>& allowed = {})
{
    const auto n = static_cast<std::size_t>(g.num_vertices());
    std::vector<Vertex> parent(n, -2);
    std::vector<char> target(n, 0);
    for (Vertex v : to) target[v] = 1;
    std::queue<Vertex> q;
    for (Vertex s : from) {
        parent[s] = -1;
        q.push(s);
    }
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        if (target[u]) {
            std::vector<Vertex> path;
            for (Vertex x = u; x != -1; x = parent[x]) path.push_back(x);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (Vertex v : g.neighbors(u))
            if (parent[v] == -2 && (allowed.empty() || allowed[v])) {
                parent[v] = u;
                q.push(v);
            }
    }
    return {};
}

/// Disjoint union; vertices of b are shifted by a.num_vertices().
inline Graph disjoint_union(const Graph& a, const Graph& b)
{
    auto edges = a.edge_list();
    const int off = a.num_vertices();
    for (auto [u, v] : b.edge_list()) edges.emplace_back(u + off, v + off);
    return Graph(a.num_vertices() + b.num_vertices(), edges);
}

} // namespace dskernel
