#pragma once

// Rooted tree decompositions: validation, normalisation, derived maps
// (adhesion sets, cones, edge intersections, torsos), peaks and a heuristic
// elimination-ordering construction.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graph.hpp"

namespace dskernel {

using Node = int;

enum class NodeTag { low_high_degree, minor_structured };

struct NodeType {
    NodeTag tag = NodeTag::low_high_degree;
    VertexSet apex_set;
};

struct ValidationReport {
    bool ok = true;
    std::optional<std::string> structure;      // not a tree, bad vertex ids
    std::optional<std::string> coverage;       // some vertex in no bag
    std::optional<std::string> edge_coverage;  // some edge in no bag
    std::optional<std::string> connectivity;   // bags containing a vertex not connected
    std::optional<std::string> containment;    // one bag inside a neighbouring bag

    std::string summary() const
    {
        std::string s;
        for (const auto* f : {&structure, &coverage, &edge_coverage, &connectivity, &containment})
            if (*f) s += (s.empty() ? "" : "; ") + **f;
        return s.empty() ? "valid" : s;
    }
};

class TreeDecomposition {
public:
    TreeDecomposition() = default;

    /// `tree_edges` must form a tree on nodes 0..bags.size()-1. Rooted at the node
    /// containing the lowest vertex id when `root` is not given.
    TreeDecomposition(std::shared_ptr<const Graph> host, std::vector<VertexSet> bags,
                      const std::vector<std::pair<Node, Node>>& tree_edges, std::optional<Node> root = {})
        : host_(std::move(host)), bags_(std::move(bags))
    {
        require_input(host_ != nullptr, "decomposition without host graph");
        for (auto& b : bags_) b = make_set(std::move(b));
        tree_adj_.assign(bags_.size(), {});
        for (auto [a, b] : tree_edges) {
            require_input(a >= 0 && b >= 0 && a < num_nodes() && b < num_nodes() && a != b, "bad tree edge");
            tree_adj_[a].push_back(b);
            tree_adj_[b].push_back(a);
        }
        for (auto& a : tree_adj_) std::sort(a.begin(), a.end());
        require_input(num_nodes() > 0, "decomposition needs at least one node");
        require_input(static_cast<int>(tree_edges.size()) == num_nodes() - 1, "tree edge count must be #bags - 1");
        reroot(root ? *root : default_root());
    }

    TreeDecomposition(const Graph& host, std::vector<VertexSet> bags,
                      const std::vector<std::pair<Node, Node>>& tree_edges, std::optional<Node> root = {})
        : TreeDecomposition(std::make_shared<const Graph>(host), std::move(bags), tree_edges, root)
    {}

    const Graph& host() const { return *host_; }
    std::shared_ptr<const Graph> host_ptr() const { return host_; }

    int num_nodes() const { return static_cast<int>(bags_.size()); }
    Node root() const { return root_; }
    const VertexSet& bag(Node t) const { return bags_.at(check(t)); }
    const std::vector<VertexSet>& bags() const { return bags_; }
    Node parent(Node t) const { return parent_.at(check(t)); }
    const std::vector<Node>& children(Node t) const { return children_.at(check(t)); }
    int depth(Node t) const { return depth_.at(check(t)); }
    const std::vector<Node>& neighbors(Node t) const { return tree_adj_.at(check(t)); }

    /// Nodes in preorder from the root (children by increasing id).
    const std::vector<Node>& preorder() const { return preorder_; }

    /// Tree edges as (parent, child) pairs; an edge is identified by its child.
    std::vector<std::pair<Node, Node>> tree_edges() const
    {
        std::vector<std::pair<Node, Node>> out;
        for (Node t : preorder_)
            if (t != root_) out.emplace_back(parent_[t], t);
        return out;
    }

    int width() const
    {
        std::size_t w = 0;
        for (const auto& b : bags_) w = std::max(w, b.size());
        return static_cast<int>(w) - 1;
    }

    /// Intersection with the parent bag; empty at the root.
    VertexSet sigma(Node t) const
    {
        if (check(t) == root_) return {};
        return set_intersection(bags_[t], bags_[parent_[t]]);
    }

    /// Union of the bags of t and all its descendants.
    VertexSet gamma(Node t) const
    {
        std::vector<Vertex> acc;
        for (Node s : subtree_nodes(t)) acc.insert(acc.end(), bags_[s].begin(), bags_[s].end());
        return make_set(std::move(acc));
    }

    /// Intersection of the bags at the two ends of a tree edge.
    VertexSet kappa(Node a, Node b) const
    {
        require_input(is_tree_edge(a, b), "not a tree edge");
        return set_intersection(bags_[a], bags_[b]);
    }

    bool is_tree_edge(Node a, Node b) const
    {
        return a >= 0 && a < num_nodes() && std::binary_search(tree_adj_[a].begin(), tree_adj_[a].end(), b);
    }

    /// Descendants of t (inclusive) in preorder.
    std::vector<Node> subtree_nodes(Node t) const
    {
        std::vector<Node> out;
        std::vector<Node> stack{check(t)};
        while (!stack.empty()) {
            Node u = stack.back();
            stack.pop_back();
            out.push_back(u);
            for (auto it = children_[u].rbegin(); it != children_[u].rend(); ++it) stack.push_back(*it);
        }
        return out;
    }

    bool is_ancestor(Node a, Node d) const
    {
        check(a);
        for (Node x = check(d); x != -1; x = parent_[x])
            if (x == a) return true;
        return false;
    }

    /// Host graph restricted to the bag, with the parent adhesion and every child
    /// adhesion completed to cliques.
    MappedGraph torso(Node t) const
    {
        const auto& b = bag(t);
        auto base = induced_subgraph(*host_, b);
        auto edges = base.graph.edge_list();
        auto local = [&](Vertex v) { return static_cast<Vertex>(std::lower_bound(b.begin(), b.end(), v) - b.begin()); };
        auto clique = [&](const VertexSet& s) {
            for (std::size_t i = 0; i < s.size(); ++i)
                for (std::size_t j = i + 1; j < s.size(); ++j) edges.emplace_back(local(s[i]), local(s[j]));
        };
        clique(sigma(t));
        for (Node c : children_[t]) clique(sigma(c));
        return {Graph::from_edges_dedup(static_cast<int>(b.size()), edges), b};
    }

    /// The node nearest the root whose bag contains v.
    Node peak(Vertex v) const
    {
        require_input(host_->has_vertex(v), "unknown vertex id " + std::to_string(v));
        Node p = peaks_.at(v);
        require_input(p >= 0, "vertex " + std::to_string(v) + " is in no bag");
        return p;
    }

    /// Nodes whose bag contains v.
    std::vector<Node> nodes_containing(Vertex v) const
    {
        std::vector<Node> out;
        for (Node t = 0; t < num_nodes(); ++t)
            if (set_contains(bags_[t], v)) out.push_back(t);
        return out;
    }

    void set_node_type(Node t, NodeType type) { annotations_[check(t)] = std::move(type); }
    std::optional<NodeType> annotation(Node t) const
    {
        auto it = annotations_.find(check(t));
        if (it == annotations_.end()) return std::nullopt;
        return it->second;
    }
    const std::map<Node, NodeType>& annotations() const { return annotations_; }

    void reroot(Node r)
    {
        root_ = check(r);
        const auto k = static_cast<std::size_t>(num_nodes());
        parent_.assign(k, -2);
        children_.assign(k, {});
        depth_.assign(k, 0);
        preorder_.clear();
        std::vector<Node> stack{root_};
        parent_[root_] = -1;
        while (!stack.empty()) {
            Node u = stack.back();
            stack.pop_back();
            preorder_.push_back(u);
            for (auto it = tree_adj_[u].rbegin(); it != tree_adj_[u].rend(); ++it) {
                Node v = *it;
                if (v == parent_[u]) continue;
                require_input(parent_[v] == -2, "decomposition tree has a cycle");
                parent_[v] = u;
                depth_[v] = depth_[u] + 1;
                stack.push_back(v);
            }
        }
        for (Node t : preorder_)
            if (parent_[t] >= 0) children_[parent_[t]].push_back(t);
        for (auto& c : children_) std::sort(c.begin(), c.end());
        require_input(preorder_.size() == k, "decomposition tree is disconnected");
        peaks_.assign(static_cast<std::size_t>(host_->num_vertices()), -1);
        for (Node t : preorder_)
            for (Vertex v : bags_[t]) {
                require_input(host_->has_vertex(v), "bag contains unknown vertex " + std::to_string(v));
                if (peaks_[v] < 0 || depth_[t] < depth_[peaks_[v]]) peaks_[v] = t;
            }
    }

    Node default_root() const
    {
        for (Vertex v = 0; v < host_->num_vertices(); ++v)
            for (Node t = 0; t < num_nodes(); ++t)
                if (set_contains(bags_[t], v)) return t;
        return 0;
    }

private:
    Node check(Node t) const
    {
        require_input(t >= 0 && t < num_nodes(), "unknown decomposition node " + std::to_string(t));
        return t;
    }

    std::shared_ptr<const Graph> host_;
    std::vector<VertexSet> bags_;
    std::vector<std::vector<Node>> tree_adj_;
    Node root_ = 0;
    std::vector<Node> parent_;
    std::vector<std::vector<Node>> children_;
    std::vector<int> depth_;
    std::vector<Node> preorder_;
    std::vector<Node> peaks_;
    std::map<Node, NodeType> annotations_;
};

/// Checks coverage, edge coverage, subtree connectivity and (when requested) that no
/// bag is contained in a neighbouring bag. Never throws.
inline ValidationReport validate(const TreeDecomposition& td, bool require_normalized = true)
{
    ValidationReport r;
    const Graph& g = td.host();
    for (Node t = 0; t < td.num_nodes() && !r.structure; ++t)
        for (Vertex v : td.bag(t))
            if (!g.has_vertex(v)) {
                r.structure = "bag " + std::to_string(t) + " has unknown vertex " + std::to_string(v);
                break;
            }
    if (r.structure) {
        r.ok = false;
        return r;
    }
    std::vector<std::vector<Node>> holders(static_cast<std::size_t>(g.num_vertices()));
    for (Node t = 0; t < td.num_nodes(); ++t)
        for (Vertex v : td.bag(t)) holders[v].push_back(t);
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (holders[v].empty()) {
            r.coverage = "vertex " + std::to_string(v) + " is in no bag";
            break;
        }
    for (auto [u, v] : g.sorted_edges()) {
        bool found = false;
        for (Node t : holders[u])
            if (set_contains(td.bag(t), v)) {
                found = true;
                break;
            }
        if (!found) {
            r.edge_coverage = "edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag";
            break;
        }
    }
    for (Vertex v = 0; v < g.num_vertices() && !r.connectivity; ++v) {
        // Connected iff exactly one holder has its parent outside the holder set.
        int tops = 0;
        for (Node t : holders[v]) {
            Node p = td.parent(t);
            if (p < 0 || !set_contains(td.bag(p), v)) ++tops;
        }
        if (tops > 1) r.connectivity = "bags containing vertex " + std::to_string(v) + " are not connected";
    }
    if (require_normalized)
        for (auto [p, c] : td.tree_edges())
            if (set_subset(td.bag(c), td.bag(p)) || set_subset(td.bag(p), td.bag(c))) {
                r.containment = "bag " + std::to_string(c) + " and bag " + std::to_string(p) + " are nested";
                break;
            }
    r.ok = !r.coverage && !r.edge_coverage && !r.connectivity && !r.containment;
    return r;
}

/// Contracts tree edges whose endpoint bags are nested until none remain. The root
/// node survives every contraction it takes part in. Node ids are compacted in order.
inline TreeDecomposition normalize(const TreeDecomposition& td)
{
    const int k = td.num_nodes();
    std::vector<VertexSet> bags = td.bags();
    std::vector<std::set<Node>> adj(static_cast<std::size_t>(k));
    for (auto [p, c] : td.tree_edges()) {
        adj[p].insert(c);
        adj[c].insert(p);
    }
    std::vector<char> alive(static_cast<std::size_t>(k), 1);
    Node root = td.root();
    auto merge_into = [&](Node keep, Node drop) {
        for (Node x : adj[drop])
            if (x != keep) {
                adj[x].erase(drop);
                adj[x].insert(keep);
                adj[keep].insert(x);
            }
        adj[keep].erase(drop);
        adj[drop].clear();
        alive[drop] = 0;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (Node a = 0; a < k && !changed; ++a) {
            if (!alive[a]) continue;
            for (Node b : adj[a]) {
                if (b < a) continue;
                bool ab = set_subset(bags[a], bags[b]);
                bool ba = set_subset(bags[b], bags[a]);
                if (!ab && !ba) continue;
                // Keep the endpoint with the larger bag; its id survives unless the other is the root.
                Node big = ab ? b : a, small = ab ? a : b;
                if (small == root) {
                    bags[small] = bags[big];
                    std::swap(big, small);
                }
                merge_into(big, small);
                changed = true;
                break;
            }
        }
    }
    std::vector<Node> remap(static_cast<std::size_t>(k), -1);
    std::vector<VertexSet> nb;
    for (Node t = 0; t < k; ++t)
        if (alive[t]) {
            remap[t] = static_cast<Node>(nb.size());
            nb.push_back(bags[t]);
        }
    std::vector<std::pair<Node, Node>> edges;
    for (Node t = 0; t < k; ++t)
        for (Node u : adj[t])
            if (alive[t] && t < u) edges.emplace_back(remap[t], remap[u]);
    TreeDecomposition out(td.host_ptr(), nb, edges, remap[root]);
    for (const auto& [t, type] : td.annotations())
        if (alive[t]) out.set_node_type(remap[t], type);
    return out;
}

enum class EliminationStrategy { min_fill, min_degree };

/// Elimination-ordering decomposition (ties by smallest vertex id), normalised and
/// rooted at the node holding vertex 0. Components are chained together.
inline TreeDecomposition heuristic_decomposition(const Graph& g, EliminationStrategy strategy = EliminationStrategy::min_fill)
{
    auto host = std::make_shared<const Graph>(g);
    const int n = g.num_vertices();
    if (n == 0) return TreeDecomposition(host, {VertexSet{}}, {});
    std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
    std::vector<char> gone(static_cast<std::size_t>(n), 0);
    std::vector<int> position(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> order;
    std::vector<VertexSet> bags;
    auto fill_of = [&](Vertex v) {
        long long f = 0;
        for (auto i = adj[v].begin(); i != adj[v].end(); ++i)
            for (auto j = std::next(i); j != adj[v].end(); ++j)
                if (!adj[*i].count(*j)) ++f;
        return f;
    };
    for (int step = 0; step < n; ++step) {
        Vertex best = -1;
        long long best_score = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (gone[v]) continue;
            long long score = strategy == EliminationStrategy::min_fill
                                  ? fill_of(v) * (n + 1) + static_cast<long long>(adj[v].size())
                                  : static_cast<long long>(adj[v].size());
            if (best < 0 || score < best_score) {
                best = v;
                best_score = score;
            }
        }
        VertexSet bag(adj[best].begin(), adj[best].end());
        bag.push_back(best);
        bags.push_back(make_set(std::move(bag)));
        for (auto i = adj[best].begin(); i != adj[best].end(); ++i)
            for (auto j = std::next(i); j != adj[best].end(); ++j) {
                adj[*i].insert(*j);
                adj[*j].insert(*i);
            }
        for (Vertex u : adj[best]) adj[u].erase(best);
        adj[best].clear();
        gone[best] = 1;
        position[best] = step;
        order.push_back(best);
    }
    // Bag i attaches to the bag of its earliest-eliminated later neighbour.
    std::vector<std::pair<Node, Node>> edges;
    std::vector<Node> roots;
    for (int i = 0; i < n; ++i) {
        int next = n;
        for (Vertex u : bags[i])
            if (u != order[i]) next = std::min(next, position[u]);
        if (next < n)
            edges.emplace_back(i, next);
        else
            roots.push_back(i);
    }
    for (std::size_t i = 1; i < roots.size(); ++i) edges.emplace_back(roots[i - 1], roots[i]);
    TreeDecomposition raw(host, bags, edges);
    auto td = normalize(raw);
    td.reroot(td.default_root());
    return td;
}

/// Low/high-degree if the torso has at most h vertices of degree above h; otherwise
/// minor-structured with the h highest-degree torso vertices as apex set.
inline NodeType classify_node(const TreeDecomposition& td, Node t, int h)
{
    auto torso = td.torso(t);
    std::vector<std::pair<int, Vertex>> by_degree;
    int high = 0;
    for (Vertex i = 0; i < torso.graph.num_vertices(); ++i) {
        int d = torso.graph.degree(i);
        if (d > h) ++high;
        by_degree.emplace_back(-d, torso.origin[i]);
    }
    if (high <= h) return {NodeTag::low_high_degree, {}};
    std::sort(by_degree.begin(), by_degree.end());
    VertexSet apex;
    for (int i = 0; i < h; ++i) apex.push_back(by_degree[i].second);
    return {NodeTag::minor_structured, make_set(std::move(apex))};
}

/// The declared type of t when annotated, otherwise classify_node.
inline NodeType node_type(const TreeDecomposition& td, Node t, int h)
{
    if (auto a = td.annotation(t)) {
        if (a->tag == NodeTag::minor_structured && a->apex_set.empty()) a->apex_set = classify_node(td, t, h).apex_set;
        return *a;
    }
    return classify_node(td, t, h);
}

/// Same tree with `extra` added to every bag (still a valid decomposition).
inline TreeDecomposition with_vertices_in_all_bags(const TreeDecomposition& td, const VertexSet& extra)
{
    auto bags = td.bags();
    for (auto& b : bags) b = set_union(b, extra);
    return TreeDecomposition(td.host_ptr(), bags, td.tree_edges(), td.root());
}

/// Largest adhesion |sigma(t)| over all nodes.
inline int adhesion(const TreeDecomposition& td)
{
    std::size_t a = 0;
    for (Node t = 0; t < td.num_nodes(); ++t) a = std::max(a, td.sigma(t).size());
    return static_cast<int>(a);
}

} // namespace dskernel
