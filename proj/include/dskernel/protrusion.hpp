#pragma once

// Protrusions (small-boundary vertex sets of bounded treewidth or with a small
// dominating witness), their verification, detection and table-driven replacement.

#include "boundaried.hpp"

namespace dskernel {

enum class ProtrusionKind { tw_protrusion, ds_protrusion, cds_protrusion };

inline const char* kind_name(ProtrusionKind k)
{
    switch (k) {
    case ProtrusionKind::tw_protrusion: return "tw";
    case ProtrusionKind::ds_protrusion: return "ds";
    case ProtrusionKind::cds_protrusion: return "cds";
    }
    return "?";
}

struct Protrusion {
    VertexSet vertices;
    VertexSet boundary;   // vertices of `vertices` with a neighbour outside
    ProtrusionKind kind = ProtrusionKind::ds_protrusion;
    int r = 0;
    VertexSet witness;    // dominating (or connected dominating) set of the induced part
};

/// Vertices of x having a neighbour outside x.
inline VertexSet boundary_of(const Graph& g, const VertexSet& x)
{
    check_members(g, x);
    VertexSet b;
    for (Vertex v : x)
        for (Vertex u : g.neighbors(v))
            if (!set_contains(x, u)) {
                b.push_back(v);
                break;
            }
    return b;
}

enum class Verdict { valid, invalid, unverified };

struct ProtrusionCheck {
    Verdict verdict = Verdict::valid;
    std::string reason;

    bool ok() const { return verdict == Verdict::valid; }
};

inline ProtrusionCheck verify_protrusion(const Graph& g, const Protrusion& p)
{
    auto fail = [](std::string why) { return ProtrusionCheck{Verdict::invalid, std::move(why)}; };
    for (Vertex v : p.vertices)
        if (!g.has_vertex(v)) return fail("vertex outside the graph");
    if (make_set(p.vertices) != p.vertices) return fail("vertex set not sorted and unique");
    if (boundary_of(g, p.vertices) != p.boundary) return fail("boundary does not match the graph");
    if (static_cast<int>(p.boundary.size()) > p.r) return fail("boundary larger than r");
    auto part = induced_subgraph(g, p.vertices);
    auto local = [&](const VertexSet& s) {
        VertexSet out;
        for (Vertex v : s) {
            auto it = std::lower_bound(p.vertices.begin(), p.vertices.end(), v);
            if (it == p.vertices.end() || *it != v) return std::optional<VertexSet>{};
            out.push_back(static_cast<Vertex>(it - p.vertices.begin()));
        }
        return std::optional<VertexSet>{out};
    };
    switch (p.kind) {
    case ProtrusionKind::tw_protrusion:
        if (heuristic_decomposition(part.graph).width() <= p.r) return {};
        return {Verdict::unverified, "heuristic decomposition too wide"};
    case ProtrusionKind::ds_protrusion: {
        auto w = local(p.witness);
        if (!w) return fail("witness outside the protrusion");
        if (static_cast<int>(w->size()) > p.r) return fail("witness larger than r");
        if (!is_dominating_set(part.graph, *w)) return fail("witness does not dominate");
        return {};
    }
    case ProtrusionKind::cds_protrusion: {
        auto w = local(p.witness);
        if (!w) return fail("witness outside the protrusion");
        if (static_cast<int>(w->size()) > p.r) return fail("witness larger than r");
        for (const auto& c : connected_components(part.graph)) {
            auto wc = set_intersection(*w, c);
            if (wc.empty() || !is_connected_subset(part.graph, wc) ||
                !set_subset(c, closed_neighborhood(part.graph, wc)))
                return fail("witness is not a connected dominating set of every component");
        }
        return {};
    }
    }
    return fail("unknown kind");
}

struct ProtrusionReplacement {
    Graph graph;
    std::vector<Vertex> origin; // vertex of the new graph -> original vertex, -1 if new
    int k = 0;
    int constant = 0;
    std::size_t representative = 0;
    int removed = 0;            // net vertex decrease
};

/// Replaces p by the table representative of its class. Refuses (IncompletenessError)
/// unverified parts, unrepresented classes, positive constants and, when
/// `require_shrink`, replacements that do not reduce the vertex count.
inline ProtrusionReplacement replace_protrusion(const Graph& g, const Protrusion& p, const RepresentativeTable& table,
                                                int k, bool require_shrink = false)
{
    auto check = verify_protrusion(g, p);
    if (check.verdict == Verdict::invalid) throw InputError("invalid protrusion: " + check.reason);
    if (check.verdict == Verdict::unverified) throw IncompletenessError("protrusion unverified: " + check.reason);
    if (static_cast<int>(p.boundary.size()) > table.t)
        throw GuardError("protrusion boundary " + std::to_string(p.boundary.size()) + " exceeds table capacity " +
                         std::to_string(table.t));
    auto part = induced_subgraph(g, p.vertices);
    std::vector<Vertex> local_labels(static_cast<std::size_t>(table.t), -1), labels(local_labels.size(), -1);
    for (std::size_t i = 0; i < p.boundary.size(); ++i) {
        labels[i] = p.boundary[i];
        local_labels[i] = static_cast<Vertex>(
            std::lower_bound(p.vertices.begin(), p.vertices.end(), p.boundary[i]) - p.vertices.begin());
    }
    BoundariedGraph piece(part.graph, table.t, local_labels);
    if (require_shrink) {
        // Cheap pre-check before the row computation.
        auto cls = table.find_class(signature(piece, table.problem));
        if (!cls) throw IncompletenessError("class not represented in the table");
        if (table.reps[*cls].num_vertices() >= piece.num_vertices())
            throw IncompletenessError("representative is not smaller");
    }
    auto r = reduce_via_representatives(piece, table);
    if (r.constant > 0) throw IncompletenessError("replacement would raise the parameter");
    auto rep = replace(g, p.vertices, labels, r.graph);
    ProtrusionReplacement out;
    out.removed = g.num_vertices() - rep.graph.num_vertices();
    if (require_shrink && out.removed <= 0) throw IncompletenessError("replacement does not shrink the graph");
    out.graph = std::move(rep.graph);
    out.origin = std::move(rep.origin);
    out.constant = r.constant;
    out.k = k + r.constant;
    out.representative = r.index;
    return out;
}

inline ProtrusionReplacement replace_ds_protrusion(const Graph& g, const Protrusion& p, const RepresentativeTable& table,
                                                   int k, bool require_shrink = false)
{
    require_input(p.kind != ProtrusionKind::tw_protrusion, "expected a domination protrusion");
    return replace_protrusion(g, p, table, k, require_shrink);
}

inline ProtrusionReplacement replace_tw_protrusion(const Graph& g, const Protrusion& p, const RepresentativeTable& table,
                                                   int k, bool require_shrink = false)
{
    require_input(p.kind == ProtrusionKind::tw_protrusion, "expected a treewidth protrusion");
    return replace_protrusion(g, p, table, k, require_shrink);
}

/// |d ∩ gamma(t)| for every node, from peak counts.
inline std::vector<int> subtree_mu(const TreeDecomposition& td, const VertexSet& d)
{
    const int nodes = td.num_nodes();
    std::vector<int> below(static_cast<std::size_t>(nodes), 0);
    for (Vertex v : d) ++below[td.peak(v)];
    auto order = td.preorder();
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (td.parent(*it) >= 0) below[td.parent(*it)] += below[*it];
    for (Node t = 0; t < nodes; ++t) below[t] += static_cast<int>(set_intersection(td.sigma(t), d).size());
    return below;
}

/// First node w (preorder) whose subtree holds at most h vertices of d and whose
/// bag union exceeds xi vertices; the part is a 2h-DS-protrusion witnessed by
/// (d ∩ W) ∪ sigma(w).
inline std::optional<Protrusion> find_large_ds_protrusion(const Graph& g, const TreeDecomposition& td, const VertexSet& d,
                                                          int h, int xi)
{
    require_input(is_dominating_set(g, d), "d must dominate the graph");
    auto mu = subtree_mu(td, d);
    for (Node w : td.preorder()) {
        if (td.parent(w) < 0 || mu[w] > h) continue;
        if (static_cast<int>(td.sigma(w).size()) > h) continue;
        VertexSet x = td.gamma(w);
        if (static_cast<int>(x.size()) <= xi) continue;
        Protrusion p{x, boundary_of(g, x), ProtrusionKind::ds_protrusion, 2 * h,
                     set_union(set_intersection(d, x), td.sigma(w))};
        return p;
    }
    return std::nullopt;
}

} // namespace dskernel
