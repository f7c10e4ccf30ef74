#pragma once

// Heavy-edge marking of a tree decomposition, tree statistics, long-path
// protrusions and slice decompositions.

#include <variant>

#include "protrusion.hpp"

namespace dskernel {

/// A tree decomposition with the edges whose both sides see at least h+1 vertices
/// of d. Tree edges are named by their child node.
struct MarkedTree {
    TreeDecomposition td;
    VertexSet d;
    int h = 0;
    std::vector<int> mu_below;  // |d ∩ Psi(side of the edge holding the child)|
    std::vector<int> mu_above;  // |d ∩ Psi(side holding the parent)|
    std::vector<Node> heavy;    // child ids of heavy edges, increasing

    bool is_heavy(Node child) const { return std::binary_search(heavy.begin(), heavy.end(), child); }
};

inline MarkedTree mark_heavy_edges(const TreeDecomposition& td, const VertexSet& d, int h)
{
    check_members(td.host(), d);
    MarkedTree mt{td, make_set(d), h, subtree_mu(td, d), {}, {}};
    const int nodes = td.num_nodes();
    // The parent side sees every d-vertex except those whose bags all lie below.
    std::vector<int> peaks_below(static_cast<std::size_t>(nodes), 0);
    for (Vertex v : mt.d) ++peaks_below[td.peak(v)];
    auto order = td.preorder();
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (td.parent(*it) >= 0) peaks_below[td.parent(*it)] += peaks_below[*it];
    mt.mu_above.resize(static_cast<std::size_t>(nodes));
    for (Node t = 0; t < nodes; ++t) {
        mt.mu_above[t] = static_cast<int>(mt.d.size()) - peaks_below[t];
        if (td.parent(t) >= 0 && mt.mu_below[t] >= h + 1 && mt.mu_above[t] >= h + 1) mt.heavy.push_back(t);
    }
    return mt;
}

/// The subgraph of the decomposition tree formed by heavy edges.
struct MarkedSubtree {
    std::vector<Node> nodes;                    // increasing
    std::vector<std::pair<Node, Node>> edges;   // (parent, child)

    std::vector<Node> neighbors(Node t) const
    {
        std::vector<Node> out;
        for (auto [a, b] : edges) {
            if (a == t) out.push_back(b);
            if (b == t) out.push_back(a);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

/// Heavy edges as a tree; throws InvariantError if they do not form one subtree.
inline MarkedSubtree marked_subtree(const MarkedTree& mt)
{
    MarkedSubtree m;
    for (Node c : mt.heavy) {
        m.edges.emplace_back(mt.td.parent(c), c);
        m.nodes.push_back(c);
        m.nodes.push_back(mt.td.parent(c));
    }
    std::sort(m.nodes.begin(), m.nodes.end());
    m.nodes.erase(std::unique(m.nodes.begin(), m.nodes.end()), m.nodes.end());
    // A forest on these nodes is connected iff it has one edge fewer than nodes.
    ensure(m.nodes.empty() || m.edges.size() + 1 == m.nodes.size(), "heavy edges do not form a connected subtree");
    return m;
}

struct TreeStats {
    int leaves = 0;
    int branch = 0;   // degree >= 3
    int links = 0;    // degree 2
    std::vector<std::vector<Node>> link_paths; // maximal runs of degree-2 nodes

    int path_count() const { return static_cast<int>(link_paths.size()); }
};

/// Degree taxonomy of a tree given by adjacency lists. A single node counts as one leaf.
inline TreeStats tree_stats(const std::vector<std::vector<Node>>& adj)
{
    TreeStats s;
    const int n = static_cast<int>(adj.size());
    if (n == 0) return s;
    if (n == 1) {
        s.leaves = 1;
        return s;
    }
    for (const auto& a : adj) {
        if (a.size() <= 1) ++s.leaves;
        else if (a.size() == 2) ++s.links;
        else ++s.branch;
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (Node t = 0; t < n; ++t) {
        if (adj[t].size() != 2 || seen[t]) continue;
        // Walk to one end of the run, then collect it in order.
        Node start = t, prev = -1, outside = -1;
        for (;;) {
            Node next = adj[start][0] == prev ? adj[start][1] : adj[start][0];
            if (adj[next].size() != 2) {
                outside = next;
                break;
            }
            prev = start;
            start = next;
        }
        std::vector<Node> path;
        prev = outside;
        for (Node cur = start;;) {
            path.push_back(cur);
            seen[cur] = 1;
            Node next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            if (adj[next].size() != 2 || seen[next]) break;
            prev = cur;
            cur = next;
        }
        s.link_paths.push_back(std::move(path));
    }
    return s;
}

/// Adjacency of the marked subtree over compact ids, with the id map.
inline std::pair<std::vector<std::vector<Node>>, std::vector<Node>> marked_adjacency(const MarkedSubtree& m)
{
    std::vector<std::vector<Node>> adj(m.nodes.size());
    auto id = [&](Node t) {
        return static_cast<Node>(std::lower_bound(m.nodes.begin(), m.nodes.end(), t) - m.nodes.begin());
    };
    for (auto [a, b] : m.edges) {
        adj[id(a)].push_back(id(b));
        adj[id(b)].push_back(id(a));
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return {adj, m.nodes};
}

/// Maximal link paths of M* in decomposition node ids, each oriented from its end
/// with the smaller neighbour id.
inline std::vector<std::vector<Node>> link_paths(const MarkedSubtree& m)
{
    auto [adj, ids] = marked_adjacency(m);
    std::vector<std::vector<Node>> out;
    for (auto& p : tree_stats(adj).link_paths) {
        std::vector<Node> path;
        for (Node c : p) path.push_back(ids[c]);
        out.push_back(std::move(path));
    }
    return out;
}

/// Union of the bags of the tree component containing t after deleting the tree
/// edges from t to every node in `cut`.
inline VertexSet hanging_union(const TreeDecomposition& td, Node t, const std::vector<Node>& cut)
{
    VertexSet out;
    std::vector<Node> stack{t};
    std::vector<char> seen(static_cast<std::size_t>(td.num_nodes()), 0);
    seen[t] = 1;
    for (Node c : cut) seen[c] = 1;
    while (!stack.empty()) {
        Node u = stack.back();
        stack.pop_back();
        out = set_union(out, td.bag(u));
        for (Node v : td.neighbors(u))
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
    }
    return out;
}

/// Marks, for every vertex of d in the path's hanging parts and every vertex of the
/// two end adhesions, the first and last path nodes whose hanging part contains it.
/// A run of more than xi unmarked nodes between two marks yields a 2h-DS-protrusion.
inline std::optional<Protrusion> long_path_reduction(const Graph& g, const MarkedTree& mt, const MarkedSubtree& mstar,
                                                     const std::vector<Node>& path, int xi, int h)
{
    const auto& td = mt.td;
    const int m = static_cast<int>(path.size());
    if (m == 0) return std::nullopt;
    auto first_nb = mstar.neighbors(path.front()), last_nb = mstar.neighbors(path.back());
    ensure(first_nb.size() == 2 && last_nb.size() == 2, "link path node without two marked neighbours");
    Node s = m > 1 && first_nb[0] == path[1] ? first_nb[1] : first_nb[0];
    Node t = m > 1 ? (last_nb[0] == path[m - 2] ? last_nb[1] : last_nb[0]) : (first_nb[0] == s ? first_nb[1] : first_nb[0]);

    std::vector<VertexSet> part(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        std::vector<Node> cut{i > 0 ? path[i - 1] : s, i + 1 < m ? path[i + 1] : t};
        part[i] = hanging_union(td, path[i], cut);
    }
    VertexSet all;
    for (const auto& p : part) all = set_union(all, p);
    VertexSet sources = set_union(set_intersection(mt.d, all),
                                  set_union(td.kappa(s, path[0]), td.kappa(path[m - 1], t)));
    // Positions -1 and m stand for the end nodes s and t, always marked.
    std::vector<char> marked(static_cast<std::size_t>(m), 0);
    for (Vertex w : sources) {
        int first = -1, last = -1;
        for (int i = 0; i < m; ++i)
            if (set_contains(part[i], w)) {
                if (first < 0) first = i;
                last = i;
            }
        if (first >= 0) marked[first] = marked[last] = 1;
    }
    for (int x = -1; x < m;) {
        int y = x + 1;
        while (y < m && !marked[y]) ++y;
        if (y - x - 1 > xi) {
            VertexSet w;
            for (int i = x + 1; i < y; ++i) w = set_union(w, part[i]);
            Node left = x >= 0 ? path[x] : s, right = y < m ? path[y] : t;
            VertexSet cut = set_union(td.kappa(left, path[x + 1]), td.kappa(path[y - 1], right));
            if (static_cast<int>(w.size()) > xi)
                return Protrusion{w, boundary_of(g, w), ProtrusionKind::ds_protrusion, 2 * h, cut};
        }
        x = y;
    }
    return std::nullopt;
}

/// Maximal runs of degree-2 vertices longer than xi together with their two end
/// vertices, as treewidth-one protrusions with boundary of size at most two.
inline std::vector<Protrusion> degree_two_chains(const Graph& g, int xi)
{
    std::vector<Protrusion> out;
    std::vector<char> seen(static_cast<std::size_t>(g.num_vertices()), 0);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (g.degree(v) != 2 || seen[v]) continue;
        VertexSet run{v};
        seen[v] = 1;
        VertexSet ends;
        for (Vertex dir : g.neighbors(v)) {
            Vertex prev = v, cur = dir;
            while (g.degree(cur) == 2 && !seen[cur]) {
                seen[cur] = 1;
                run.push_back(cur);
                Vertex next = g.neighbors(cur)[0] == prev ? g.neighbors(cur)[1] : g.neighbors(cur)[0];
                prev = cur;
                cur = next;
            }
            if (g.degree(cur) != 2) ends.push_back(cur);
        }
        VertexSet x = make_set(set_union(make_set(run), make_set(ends)));
        if (static_cast<int>(x.size()) <= xi) continue;
        auto b = boundary_of(g, x);
        if (b.size() > 2) continue;
        out.push_back(Protrusion{x, b, ProtrusionKind::tw_protrusion, std::max<int>(2, static_cast<int>(b.size())), {}});
    }
    return out;
}

/// Parts cut off by a single tree edge (either side) with at most max_boundary
/// boundary vertices and more than xi vertices, in preorder of the child node.
inline std::vector<Protrusion> small_boundary_parts(const Graph& g, const TreeDecomposition& td, int max_boundary,
                                                    int xi, int r)
{
    std::vector<Protrusion> out;
    const VertexSet all = g.vertices();
    for (Node w : td.preorder()) {
        if (td.parent(w) < 0) continue;
        VertexSet sig = td.sigma(w);
        if (static_cast<int>(sig.size()) > max_boundary) continue;
        VertexSet below = td.gamma(w);
        VertexSet above = set_union(set_difference(all, below), sig);
        for (const auto& x : {below, above}) {
            if (static_cast<int>(x.size()) <= xi || x.size() == all.size()) continue;
            out.push_back(Protrusion{x, boundary_of(g, x), ProtrusionKind::tw_protrusion, r, {}});
        }
    }
    return out;
}

struct Slice {
    std::vector<Node> nodes;   // M_i
    VertexSet vertices;        // Psi(M_i)
    std::vector<Node> cut;     // children naming the heavy edges incident to M_i
    VertexSet adhesion;        // union of kappa over those edges
    VertexSet boundary;        // (d ∩ vertices) ∪ adhesion
};

struct SliceDecomposition {
    std::vector<Slice> slices;
    int boundary_budget = 0;   // sum over slices of sum over cut edges of |kappa|
    int heavy_edges = 0;
};

/// Deletes heavy edges and returns the resulting subtrees with their bag unions.
/// Asserts that every slice is dominated by its boundary set.
inline SliceDecomposition slice_decomposition(const Graph& g, const MarkedTree& mt)
{
    const auto& td = mt.td;
    SliceDecomposition sd;
    sd.heavy_edges = static_cast<int>(mt.heavy.size());
    std::vector<int> comp(static_cast<std::size_t>(td.num_nodes()), -1);
    for (Node r : td.preorder()) {
        if (comp[r] >= 0) continue;
        Slice s;
        std::vector<Node> stack{r};
        comp[r] = static_cast<int>(sd.slices.size());
        while (!stack.empty()) {
            Node u = stack.back();
            stack.pop_back();
            s.nodes.push_back(u);
            for (Node v : td.neighbors(u)) {
                Node child = td.parent(v) == u ? v : u;
                if (mt.is_heavy(child)) {
                    s.cut.push_back(child);
                    continue;
                }
                if (comp[v] < 0) {
                    comp[v] = comp[r];
                    stack.push_back(v);
                }
            }
        }
        std::sort(s.nodes.begin(), s.nodes.end());
        std::sort(s.cut.begin(), s.cut.end());
        for (Node u : s.nodes) s.vertices = set_union(s.vertices, td.bag(u));
        for (Node c : s.cut) {
            auto k = td.kappa(td.parent(c), c);
            s.adhesion = set_union(s.adhesion, k);
            sd.boundary_budget += static_cast<int>(k.size());
        }
        s.boundary = set_union(set_intersection(mt.d, s.vertices), s.adhesion);
        auto local = induced_subgraph(g, s.vertices);
        VertexSet lb;
        for (Vertex v : s.boundary)
            lb.push_back(static_cast<Vertex>(std::lower_bound(s.vertices.begin(), s.vertices.end(), v) -
                                             s.vertices.begin()));
        ensure(is_dominating_set(local.graph, lb), "slice boundary does not dominate its slice");
        sd.slices.push_back(std::move(s));
    }
    return sd;
}

using SliceOutcome = std::variant<SliceDecomposition, Protrusion>;

struct SliceOptions {
    int table_t = 2;            // boundary bound for treewidth protrusions
    const std::set<VertexSet>* skip = nullptr; // protrusions already refused
};

/// All protrusion candidates in scan order: long link paths of M*, light subtrees,
/// degree-two chains, then small-boundary parts with treewidth bound h + xi.
inline std::vector<Protrusion> protrusion_candidates(const Graph& g, const MarkedTree& mt, int xi,
                                                     const SliceOptions& opt = {})
{
    std::vector<Protrusion> out;
    const int h = mt.h;
    auto mstar = marked_subtree(mt);
    for (const auto& path : link_paths(mstar))
        if (auto p = long_path_reduction(g, mt, mstar, path, xi, h)) out.push_back(*p);
    // Light subtrees: every qualifying node, not only the first.
    auto mu = subtree_mu(mt.td, mt.d);
    for (Node w : mt.td.preorder()) {
        if (mt.td.parent(w) < 0 || mu[w] > h || static_cast<int>(mt.td.sigma(w).size()) > h) continue;
        VertexSet x = mt.td.gamma(w);
        if (static_cast<int>(x.size()) <= xi) continue;
        out.push_back(Protrusion{x, boundary_of(g, x), ProtrusionKind::ds_protrusion, 2 * h,
                                 set_union(set_intersection(mt.d, x), mt.td.sigma(w))});
    }
    for (auto& p : degree_two_chains(g, xi)) out.push_back(std::move(p));
    for (auto& p : small_boundary_parts(g, mt.td, opt.table_t, xi, h + xi)) out.push_back(std::move(p));
    if (opt.skip) {
        std::erase_if(out, [&](const Protrusion& p) { return opt.skip->count(p.vertices) > 0; });
    }
    return out;
}

/// A protrusion larger than xi when one is found, otherwise the slice decomposition
/// obtained by deleting heavy edges.
inline SliceOutcome build_slice_decomposition(const Graph& g, const TreeDecomposition& td, const VertexSet& d, int h,
                                              int xi, const SliceOptions& opt = {})
{
    require_input(is_dominating_set(g, d), "d must dominate the graph");
    auto mt = mark_heavy_edges(td, d, h);
    auto candidates = protrusion_candidates(g, mt, xi, opt);
    if (!candidates.empty()) return candidates.front();
    return slice_decomposition(g, mt);
}

inline void write_slices(std::ostream& out, const SliceDecomposition& sd)
{
    out << "slices " << sd.slices.size() << " budget " << sd.boundary_budget << " heavy " << sd.heavy_edges << '\n';
    for (std::size_t i = 0; i < sd.slices.size(); ++i) {
        const auto& s = sd.slices[i];
        out << "slice " << i << " vertices " << s.vertices.size() << " nodes";
        for (Node t : s.nodes) out << ' ' << t;
        out << " adhesions";
        for (Node c : s.cut) out << ' ' << c << ':' << s.adhesion.size();
        out << '\n';
    }
}

} // namespace dskernel
