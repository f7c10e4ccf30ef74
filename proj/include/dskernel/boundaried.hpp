#pragma once

// t-boundaried graphs, gluing and replacement, domination signatures, the
// enumerated representative tables and translate-row replacement.

#include <array>
#include <atomic>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "solvers.hpp"
#include "treedec.hpp"

namespace dskernel {

inline constexpr int kInfinity = std::numeric_limits<int>::max() / 4;
inline constexpr int default_cds_signature_guard = 10;

/// A graph with an injective labelling of at most t boundary vertices by 1..t.
class BoundariedGraph {
public:
    BoundariedGraph() = default;

    /// `label_vertex[i]` is the vertex carrying label i+1, or -1 when unused.
    BoundariedGraph(Graph g, int t, std::vector<Vertex> label_vertex)
        : graph_(std::move(g)), t_(t), label_vertex_(std::move(label_vertex))
    {
        require_input(t >= 0, "negative boundary capacity");
        label_vertex_.resize(static_cast<std::size_t>(t), -1);
        require_input(static_cast<int>(label_vertex_.size()) == t, "more labels than capacity");
        label_of_.assign(static_cast<std::size_t>(graph_.num_vertices()), 0);
        for (int l = 0; l < t; ++l) {
            Vertex v = label_vertex_[l];
            if (v < 0) continue;
            require_input(graph_.has_vertex(v), "label on unknown vertex");
            require_input(label_of_[v] == 0, "labelling is not injective");
            label_of_[v] = l + 1;
        }
    }

    /// Boundary vertices labelled 1..|boundary| in increasing vertex order; capacity t
    /// defaults to |boundary|.
    static BoundariedGraph from_boundary(Graph g, const VertexSet& boundary, int t = -1)
    {
        return BoundariedGraph(std::move(g), t < 0 ? static_cast<int>(boundary.size()) : t, boundary);
    }

    const Graph& graph() const { return graph_; }
    int capacity() const { return t_; }
    int num_vertices() const { return graph_.num_vertices(); }
    Vertex vertex_of(int label) const { return label_vertex_.at(static_cast<std::size_t>(label - 1)); }
    int label_of(Vertex v) const { return label_of_.at(static_cast<std::size_t>(v)); }
    const std::vector<Vertex>& label_vertices() const { return label_vertex_; }

    std::vector<int> used_labels() const
    {
        std::vector<int> out;
        for (int l = 1; l <= t_; ++l)
            if (vertex_of(l) >= 0) out.push_back(l);
        return out;
    }

    VertexSet boundary() const
    {
        VertexSet b;
        for (Vertex v : label_vertex_)
            if (v >= 0) b.push_back(v);
        return make_set(std::move(b));
    }

    VertexSet interior() const { return set_difference(graph_.vertices(), boundary()); }

    BoundariedGraph with_capacity(int t) const
    {
        require_input(t >= static_cast<int>(used_labels().empty() ? 0 : used_labels().back()),
                      "capacity below a used label");
        auto lv = label_vertex_;
        lv.resize(static_cast<std::size_t>(t), -1);
        return BoundariedGraph(graph_, t, lv);
    }

    friend bool operator==(const BoundariedGraph& a, const BoundariedGraph& b)
    {
        return a.t_ == b.t_ && a.label_vertex_ == b.label_vertex_ && a.graph_ == b.graph_;
    }

private:
    Graph graph_;
    int t_ = 0;
    std::vector<Vertex> label_vertex_;
    std::vector<int> label_of_;
};

/// Glued graph plus where each part's vertices ended up.
struct GlueResult {
    Graph graph;
    std::vector<Vertex> first;  // vertex i of the first part -> glued id (identity)
    std::vector<Vertex> second; // vertex i of the second part -> glued id
    std::vector<Vertex> label_vertex; // label -> glued id, -1 if unused on both sides
};

inline GlueResult glue_detailed(const BoundariedGraph& g1, const BoundariedGraph& g2)
{
    require_input(g1.capacity() == g2.capacity(), "gluing needs equal boundary capacity");
    const int n1 = g1.num_vertices();
    GlueResult r;
    r.first.resize(static_cast<std::size_t>(n1));
    std::iota(r.first.begin(), r.first.end(), 0);
    r.second.assign(static_cast<std::size_t>(g2.num_vertices()), -1);
    int next = n1;
    for (Vertex v = 0; v < g2.num_vertices(); ++v) {
        int l = g2.label_of(v);
        if (l > 0 && g1.vertex_of(l) >= 0)
            r.second[v] = g1.vertex_of(l);
        else
            r.second[v] = next++;
    }
    auto edges = g1.graph().edge_list();
    for (auto [u, v] : g2.graph().edge_list()) edges.emplace_back(r.second[u], r.second[v]);
    r.graph = Graph::from_edges_dedup(next, edges);
    r.label_vertex.assign(static_cast<std::size_t>(g1.capacity()), -1);
    for (int l = 1; l <= g1.capacity(); ++l) {
        if (g1.vertex_of(l) >= 0)
            r.label_vertex[l - 1] = g1.vertex_of(l);
        else if (g2.vertex_of(l) >= 0)
            r.label_vertex[l - 1] = r.second[g2.vertex_of(l)];
    }
    return r;
}

/// Disjoint union with equally-labelled boundary vertices identified.
inline Graph glue(const BoundariedGraph& g1, const BoundariedGraph& g2) { return glue_detailed(g1, g2).graph; }

/// As glue, keeping the union of both boundaries with their labels.
inline BoundariedGraph glue_boundaried(const BoundariedGraph& g1, const BoundariedGraph& g2)
{
    auto r = glue_detailed(g1, g2);
    return BoundariedGraph(std::move(r.graph), g1.capacity(), r.label_vertex);
}

/// Result of replacing part of a graph; origin[v] is the original id or -1 for new vertices.
struct ReplaceResult {
    Graph graph;
    std::vector<Vertex> origin;
};

/// Replaces X by `part`. `labels[i]` is the vertex of X carrying label i+1 (-1 if unused);
/// every vertex of X with a neighbour outside X must be labelled.
inline ReplaceResult replace(const Graph& g, const VertexSet& x, const std::vector<Vertex>& labels,
                             const BoundariedGraph& part)
{
    check_members(g, x);
    require_input(static_cast<int>(labels.size()) == part.capacity(), "label vector does not match capacity");
    VertexSet boundary;
    for (Vertex v : labels)
        if (v >= 0) boundary.push_back(v);
    boundary = make_set(boundary);
    require_input(set_subset(boundary, x), "labelled vertices must lie in the replaced set");
    VertexSet inner = set_difference(x, boundary);
    std::vector<char> in_x(static_cast<std::size_t>(g.num_vertices()), 0);
    for (Vertex v : x) in_x[v] = 1;
    for (Vertex v : inner)
        for (Vertex u : g.neighbors(v))
            require_input(in_x[u], "interior vertex " + std::to_string(v) + " has a neighbour outside the replaced set");
    auto rest = remove_vertices(g, inner);
    std::vector<Vertex> local(static_cast<std::size_t>(g.num_vertices()), -1);
    for (std::size_t i = 0; i < rest.origin.size(); ++i) local[rest.origin[i]] = static_cast<Vertex>(i);
    std::vector<Vertex> lv;
    for (Vertex v : labels) lv.push_back(v >= 0 ? local[v] : -1);
    BoundariedGraph host(rest.graph, part.capacity(), lv);
    auto glued = glue_detailed(host, part);
    ReplaceResult out{std::move(glued.graph), {}};
    out.origin.assign(static_cast<std::size_t>(out.graph.num_vertices()), -1);
    for (std::size_t i = 0; i < rest.origin.size(); ++i) out.origin[i] = rest.origin[i];
    return out;
}

// ---------------------------------------------------------------------------
// Signatures

enum LabelState : int { SELECTED = 0, SATISFIED = 1, FREE = 2 };

/// Minimum partial-solution cost for every boundary state. For DS the key is the
/// state per used label; for CDS it is followed by a block id per label (-1 when not
/// selected) and a flag for a selected component that avoids the boundary. Missing
/// keys are infeasible.
struct Signature {
    Problem problem = Problem::DS;
    int t = 0;
    std::vector<int> labels;
    std::map<std::vector<int>, int> entries;

    int base() const
    {
        int b = kInfinity;
        for (const auto& [k, c] : entries) b = std::min(b, c);
        return b;
    }

    Signature normalized() const
    {
        Signature s = *this;
        int b = base();
        for (auto& [k, c] : s.entries) c -= b;
        return s;
    }

    int cost(const std::vector<int>& key) const
    {
        auto it = entries.find(key);
        return it == entries.end() ? kInfinity : it->second;
    }

    friend bool operator==(const Signature&, const Signature&) = default;

    /// Stable one-line text form.
    std::string to_string() const
    {
        std::ostringstream os;
        os << problem_name(problem) << " t" << t << " L";
        for (int l : labels) os << ' ' << l;
        os << " |";
        for (const auto& [k, c] : entries) {
            os << ' ';
            for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
            os << '=' << c;
        }
        return os.str();
    }
};

namespace detail {

/// Expands per-label state options into keys and records the minimum cost.
inline void record_states(std::map<std::vector<int>, int>& entries, const std::vector<std::vector<int>>& options,
                          const std::vector<int>& suffix, int cost)
{
    std::vector<int> key(options.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == options.size()) {
            std::vector<int> full = key;
            full.insert(full.end(), suffix.begin(), suffix.end());
            auto [it, inserted] = entries.try_emplace(full, cost);
            if (!inserted) it->second = std::min(it->second, cost);
            return;
        }
        for (int s : options[i]) {
            key[i] = s;
            rec(i + 1);
        }
    };
    rec(0);
}

} // namespace detail

/// DS signature by subset enumeration (reference implementation for small graphs).
inline Signature ds_signature_bruteforce(const BoundariedGraph& g, int guard_n = 20)
{
    const Graph& gr = g.graph();
    detail::guard(gr, guard_n, "ds_signature_bruteforce");
    Signature sig{Problem::DS, g.capacity(), g.used_labels(), {}};
    auto closed = detail::closed_masks(gr);
    const detail::Mask internal = detail::to_mask(g.interior());
    const int n = gr.num_vertices();
    for (detail::Mask d = 0; d < (detail::Mask{1} << n); ++d) {
        detail::Mask dom = 0;
        for (detail::Mask r = d; r; r &= r - 1) dom |= closed[__builtin_ctzll(r)];
        if ((dom & internal) != internal) continue;
        std::vector<std::vector<int>> options;
        for (int l : sig.labels) {
            Vertex v = g.vertex_of(l);
            if (d >> v & 1)
                options.push_back({SELECTED});
            else if (dom >> v & 1)
                options.push_back({SATISFIED, FREE});
            else
                options.push_back({SATISFIED});
        }
        detail::record_states(sig.entries, options, {}, __builtin_popcountll(d));
    }
    return sig;
}

/// DS signature via the decomposition DP with the boundary added to every bag.
inline Signature ds_signature(const BoundariedGraph& g)
{
    Signature sig{Problem::DS, g.capacity(), g.used_labels(), {}};
    const Graph& gr = g.graph();
    const VertexSet boundary = g.boundary();
    auto td = with_vertices_in_all_bags(heuristic_decomposition(gr), boundary);
    auto table = detail::domination_dp_table(gr, td, boundary);
    for (const auto& st : table) {
        std::vector<std::vector<int>> options;
        for (int l : sig.labels) {
            Vertex v = g.vertex_of(l);
            auto p = static_cast<int>(std::lower_bound(boundary.begin(), boundary.end(), v) - boundary.begin());
            if (st.sel >> p & 1)
                options.push_back({SELECTED});
            else if (st.dom >> p & 1)
                options.push_back({SATISFIED, FREE});
            else
                options.push_back({SATISFIED});
        }
        detail::record_states(sig.entries, options, {}, st.cost);
    }
    return sig;
}

/// CDS signature by subset enumeration: states plus connectivity blocks of the
/// selected labels and a flag for a selected component avoiding the boundary.
inline Signature cds_signature(const BoundariedGraph& g, int guard_n = default_cds_signature_guard)
{
    const Graph& gr = g.graph();
    detail::guard(gr, guard_n, "cds_signature");
    Signature sig{Problem::CDS, g.capacity(), g.used_labels(), {}};
    auto closed = detail::closed_masks(gr);
    const detail::Mask internal = detail::to_mask(g.interior());
    const detail::Mask bmask = detail::to_mask(g.boundary());
    const int n = gr.num_vertices();
    for (detail::Mask d = 0; d < (detail::Mask{1} << n); ++d) {
        detail::Mask dom = 0;
        for (detail::Mask r = d; r; r &= r - 1) dom |= closed[__builtin_ctzll(r)];
        if ((dom & internal) != internal) continue;
        // Components of G[d].
        std::vector<detail::Mask> comps;
        for (detail::Mask rest = d; rest;) {
            detail::Mask comp = rest & (~rest + 1);
            for (;;) {
                detail::Mask grow = comp;
                for (detail::Mask r = comp; r; r &= r - 1) grow |= closed[__builtin_ctzll(r)] & d;
                if (grow == comp) break;
                comp = grow;
            }
            comps.push_back(comp);
            rest &= ~comp;
        }
        int flag = 0;
        bool bad = false;
        for (auto c : comps)
            if (!(c & bmask)) {
                if (comps.size() == 1)
                    flag = 1;
                else
                    bad = true;
            }
        if (bad) continue;
        std::vector<std::vector<int>> options;
        std::vector<int> blocks;
        std::vector<int> comp_block(comps.size(), -1);
        int next_block = 0;
        for (int l : sig.labels) {
            Vertex v = g.vertex_of(l);
            if (d >> v & 1) {
                options.push_back({SELECTED});
                std::size_t ci = 0;
                while (!(comps[ci] >> v & 1)) ++ci;
                if (comp_block[ci] < 0) comp_block[ci] = next_block++;
                blocks.push_back(comp_block[ci]);
            } else {
                options.push_back(dom >> v & 1 ? std::vector<int>{SATISFIED, FREE} : std::vector<int>{SATISFIED});
                blocks.push_back(-1);
            }
        }
        blocks.push_back(flag);
        detail::record_states(sig.entries, options, blocks, __builtin_popcountll(d));
    }
    return sig;
}

inline Signature signature(const BoundariedGraph& g, Problem problem)
{
    return problem == Problem::DS ? ds_signature(g) : cds_signature(g);
}

/// DS tables with every entry lowered to the cheapest variant that additionally
/// selects some of its unselected labels. A filler can always add those labels at
/// cost one each, so composition with any filler is unchanged.
inline Signature selection_closure(const Signature& s)
{
    if (s.problem != Problem::DS) return s;
    std::vector<std::vector<int>> keys{{}};
    for (std::size_t i = 0; i < s.labels.size(); ++i) {
        std::vector<std::vector<int>> next;
        for (const auto& k : keys)
            for (int st : {SELECTED, SATISFIED, FREE}) {
                next.push_back(k);
                next.back().push_back(st);
            }
        keys = std::move(next);
    }
    Signature out = s;
    out.entries.clear();
    for (const auto& key : keys) {
        std::vector<std::size_t> open;
        for (std::size_t i = 0; i < key.size(); ++i)
            if (key[i] != SELECTED) open.push_back(i);
        int best = kInfinity;
        for (std::uint32_t m = 0; m < (1u << open.size()); ++m) {
            auto k = key;
            for (std::size_t j = 0; j < open.size(); ++j)
                if (m >> j & 1) k[open[j]] = SELECTED;
            best = std::min(best, s.cost(k));
        }
        if (best < kInfinity) out.entries[key] = best;
    }
    return out;
}

/// c with b = a + c on every entry (same infeasibility pattern), i.e. gluing the
/// second graph needs exactly c more solution vertices than gluing the first.
/// DS tables are compared after selection_closure.
inline std::optional<int> signatures_equivalent(const Signature& a_raw, const Signature& b_raw)
{
    const Signature a = selection_closure(a_raw), b = selection_closure(b_raw);
    if (a.problem != b.problem || a.t != b.t || a.labels != b.labels || a.entries.size() != b.entries.size())
        return std::nullopt;
    std::optional<int> c;
    for (auto ia = a.entries.begin(), ib = b.entries.begin(); ia != a.entries.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return std::nullopt;
        int diff = ib->second - ia->second;
        if (c && *c != diff) return std::nullopt;
        c = diff;
    }
    return c.value_or(0);
}

/// Thr(G1 (+) G2) assembled from the two signatures; kInfinity when no solution exists.
inline int compose_threshold(const Signature& s1, const Signature& s2)
{
    require_input(s1.problem == s2.problem && s1.t == s2.t, "signatures are not comparable");
    const bool cds = s1.problem == Problem::CDS;
    const int u1 = static_cast<int>(s1.labels.size()), u2 = static_cast<int>(s2.labels.size());
    std::vector<int> all = s1.labels;
    all.insert(all.end(), s2.labels.begin(), s2.labels.end());
    all = make_set(all);
    auto index_in = [](const std::vector<int>& v, int l) {
        auto it = std::lower_bound(v.begin(), v.end(), l);
        return it != v.end() && *it == l ? static_cast<int>(it - v.begin()) : -1;
    };
    int best = kInfinity;
    for (const auto& [k1, c1] : s1.entries)
        for (const auto& [k2, c2] : s2.entries) {
            bool ok = true;
            int shared_sel = 0, nsel = 0;
            std::vector<int> parent(all.size());
            std::iota(parent.begin(), parent.end(), 0);
            std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
            for (std::size_t li = 0; li < all.size() && ok; ++li) {
                int i1 = index_in(s1.labels, all[li]), i2 = index_in(s2.labels, all[li]);
                int a = i1 >= 0 ? k1[i1] : -1, b = i2 >= 0 ? k2[i2] : -1;
                if (a >= 0 && b >= 0) {
                    if ((a == SELECTED) != (b == SELECTED)) ok = false;
                    else if (a == SELECTED) ++shared_sel;
                    else if (a != FREE && b != FREE) ok = false;
                } else {
                    int s = a >= 0 ? a : b;
                    if (s == SATISFIED) ok = false;
                }
                if ((a == SELECTED) || (b == SELECTED)) ++nsel;
            }
            if (!ok) continue;
            if (cds) {
                int f1 = k1.back(), f2 = k2.back();
                if (f1 && f2) continue;
                if (f1 || f2) {
                    if (nsel != 0 || (f1 ? c2 : c1) != 0) continue;
                } else if (nsel == 0) {
                    if (c1 + c2 != 0) continue;
                } else {
                    auto merge = [&](const std::vector<int>& key, const std::vector<int>& labels, int u) {
                        std::map<int, int> first_of_block;
                        for (int i = 0; i < u; ++i) {
                            int blk = key[u + i];
                            if (blk < 0) continue;
                            int pos = index_in(all, labels[i]);
                            auto [it, inserted] = first_of_block.try_emplace(blk, pos);
                            if (!inserted) parent[find(pos)] = find(it->second);
                        }
                    };
                    merge(k1, s1.labels, u1);
                    merge(k2, s2.labels, u2);
                    std::set<int> roots;
                    for (std::size_t li = 0; li < all.size(); ++li) {
                        int i1 = index_in(s1.labels, all[li]), i2 = index_in(s2.labels, all[li]);
                        bool sel = (i1 >= 0 && k1[i1] == SELECTED) || (i2 >= 0 && k2[i2] == SELECTED);
                        if (sel) roots.insert(find(static_cast<int>(li)));
                    }
                    if (roots.size() != 1) continue;
                }
            }
            best = std::min(best, c1 + c2 - shared_sel);
        }
    return best;
}

/// Exact Thr of a plain graph: domination number (DS) or connected domination
/// number (CDS, kInfinity when disconnected).
inline int exact_threshold(const Graph& g, Problem problem, int cds_guard = default_cds_guard)
{
    if (problem == Problem::DS) return domination_number(g);
    if (g.empty()) return 0;
    if (!is_connected(g)) return kInfinity;
    return static_cast<int>(cds_opt_bruteforce(g, g.num_vertices(), cds_guard)->size());
}

/// Thr by subset enumeration only (independent of the decomposition DP).
inline int bruteforce_threshold(const Graph& g, Problem problem)
{
    if (problem == Problem::DS) return static_cast<int>(ds_opt_bruteforce(g, g.num_vertices(), 62)->size());
    if (g.empty()) return 0;
    if (!is_connected(g)) return kInfinity;
    return static_cast<int>(cds_opt_bruteforce(g, g.num_vertices(), 62)->size());
}

// ---------------------------------------------------------------------------
// Enumeration

/// Lexicographically smallest adjacency code over orderings that list labelled
/// vertices first (by label) and permute the unlabelled ones.
inline std::string canonical_code(const BoundariedGraph& g, int guard_unlabeled = 9)
{
    const Graph& gr = g.graph();
    std::vector<Vertex> fixed;
    for (int l = 1; l <= g.capacity(); ++l)
        if (g.vertex_of(l) >= 0) fixed.push_back(g.vertex_of(l));
    VertexSet free = g.interior();
    if (static_cast<int>(free.size()) > guard_unlabeled)
        throw GuardError("canonical form: too many unlabelled vertices");
    std::string prefix = std::to_string(gr.num_vertices()) + ":";
    for (int l = 1; l <= g.capacity(); ++l) prefix += g.vertex_of(l) >= 0 ? '1' : '0';
    prefix += ':';
    std::string best;
    std::vector<Vertex> order = fixed;
    order.insert(order.end(), free.begin(), free.end());
    const std::size_t nf = fixed.size();
    do {
        std::string code = prefix;
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t j = i + 1; j < order.size(); ++j) code += gr.has_edge(order[i], order[j]) ? '1' : '0';
        if (best.empty() || code < best) best = code;
    } while (std::next_permutation(order.begin() + static_cast<std::ptrdiff_t>(nf), order.end()));
    return best;
}

/// All t-boundaried graphs with at most max_n vertices, one per boundary-respecting
/// isomorphism class, sorted by (vertex count, canonical code).
inline std::vector<BoundariedGraph> enumerate_boundaried(int t, int max_n)
{
    require_input(t >= 0 && max_n >= 0, "enumeration needs t, n >= 0");
    if (t > 3 || max_n > 7) throw GuardError("boundaried enumeration beyond t <= 3, n <= 7");
    std::map<std::string, BoundariedGraph> found;
    for (int n = 0; n <= max_n; ++n) {
        std::vector<std::pair<Vertex, Vertex>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        for (int used = 0; used < (1 << t); ++used) {
            if (__builtin_popcount(static_cast<unsigned>(used)) > n) continue;
            std::vector<Vertex> lv(static_cast<std::size_t>(t), -1);
            int next = 0;
            for (int l = 0; l < t; ++l)
                if (used >> l & 1) lv[l] = next++;
            for (std::uint32_t es = 0; es < (1u << pairs.size()); ++es) {
                std::vector<std::pair<Vertex, Vertex>> edges;
                for (std::size_t i = 0; i < pairs.size(); ++i)
                    if (es >> i & 1) edges.push_back(pairs[i]);
                BoundariedGraph bg(Graph(n, edges), t, lv);
                found.try_emplace(canonical_code(bg), bg);
            }
        }
    }
    std::vector<std::pair<std::pair<int, std::string>, BoundariedGraph>> sorted;
    for (auto& [code, bg] : found) sorted.push_back({{bg.num_vertices(), code}, bg});
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<BoundariedGraph> out;
    for (auto& [key, bg] : sorted) out.push_back(bg);
    return out;
}

struct OracleVerdict {
    std::optional<int> constant;              // c with (G1+F, k) in P <=> (G2+F, k+c) in P
    std::optional<BoundariedGraph> filler;    // distinguishing filler when no constant exists
    int k = 0;                                // distinguishing parameter
    bool unconstrained = false;               // no filler gives a yes-instance, so every c fits

    bool accepts(int c) const { return unconstrained || constant == c; }
};

/// Exhaustive check of the equivalence definition over the given fillers and every
/// relevant k, using only subset-enumeration solvers.
inline OracleVerdict definitional_equivalence_oracle(const BoundariedGraph& g1, const BoundariedGraph& g2,
                                                     const std::vector<BoundariedGraph>& fillers, Problem problem)
{
    require_input(g1.capacity() == g2.capacity(), "graphs must share the boundary capacity");
    std::vector<std::pair<int, int>> thr;
    int top = 0;
    for (const auto& f : fillers) {
        int a = bruteforce_threshold(glue(g1, f), problem), b = bruteforce_threshold(glue(g2, f), problem);
        thr.emplace_back(a, b);
        if (a < kInfinity) top = std::max(top, a);
        if (b < kInfinity) top = std::max(top, b);
    }
    std::optional<int> c;
    for (auto [a, b] : thr)
        if (a < kInfinity && b < kInfinity) {
            c = b - a;
            break;
        }
    const int cc = c.value_or(0);
    auto member = [](int thr_value, int k) { return thr_value < kInfinity && k >= thr_value; };
    for (std::size_t i = 0; i < fillers.size(); ++i)
        for (int k = -top - 2; k <= top + 2; ++k)
            if (member(thr[i].first, k) != member(thr[i].second, k + cc)) return {std::nullopt, fillers[i], k};
    return {cc, std::nullopt, 0, !c};
}

inline OracleVerdict definitional_equivalence_oracle(const BoundariedGraph& g1, const BoundariedGraph& g2,
                                                     int filler_size_limit, Problem problem)
{
    require_input(g1.capacity() == g2.capacity(), "graphs must share the boundary capacity");
    if (g1.capacity() > 2 || filler_size_limit > 5) throw GuardError("oracle limited to t <= 2 and fillers n <= 5");
    return definitional_equivalence_oracle(g1, g2, enumerate_boundaried(g1.capacity(), filler_size_limit), problem);
}

// ---------------------------------------------------------------------------
// Representative tables

struct RepresentativeTable {
    Problem problem = Problem::DS;
    int t = 0;
    int size_limit = 0;
    std::vector<BoundariedGraph> reps;
    std::vector<Signature> signatures;  // raw signature of each representative
    std::vector<std::vector<int>> thr;  // thr[i][j] = Thr(reps[i] (+) reps[j])

    std::size_t size() const { return reps.size(); }

    /// One more than the largest representative.
    int xi() const
    {
        int m = 0;
        for (const auto& r : reps) m = std::max(m, r.num_vertices());
        return m + 1;
    }

    /// Index of the representative whose signature is equivalent to `s`.
    std::optional<std::size_t> find_class(const Signature& s) const
    {
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (signatures_equivalent(signatures[i], s)) return i;
        return std::nullopt;
    }
};

struct EnumerationLimits {
    int max_t = 2;
    int max_size = 5;
};

/// Signature of a small enumerated graph (exact, enumeration-based for CDS).
inline Signature small_signature(const BoundariedGraph& g, Problem problem)
{
    return problem == Problem::DS ? ds_signature_bruteforce(g) : cds_signature(g);
}

/// Buckets all boundaried graphs up to size_limit by normalised signature and keeps
/// per bucket the graph minimising (base cost, vertex count, canonical code).
inline RepresentativeTable enumerate_representatives(int t, int size_limit, Problem problem,
                                                     EnumerationLimits limits = {})
{
    if (t > limits.max_t || size_limit > limits.max_size)
        throw GuardError("representative enumeration limited to t <= " + std::to_string(limits.max_t) +
                         " and size <= " + std::to_string(limits.max_size));
    struct Best {
        std::tuple<int, int, std::string> rank;
        BoundariedGraph graph;
        Signature sig;
    };
    std::map<std::string, Best> buckets;
    for (const auto& g : enumerate_boundaried(t, size_limit)) {
        auto sig = small_signature(g, problem);
        auto key = selection_closure(sig).normalized().to_string();
        std::tuple<int, int, std::string> rank{sig.base(), g.num_vertices(), canonical_code(g)};
        auto it = buckets.find(key);
        if (it == buckets.end() || rank < it->second.rank) buckets[key] = Best{rank, g, sig};
    }
    std::vector<Best> chosen;
    for (auto& [k, b] : buckets) chosen.push_back(b);
    std::sort(chosen.begin(), chosen.end(), [](const Best& a, const Best& b) {
        auto ka = std::make_tuple(a.sig.labels, std::get<1>(a.rank), std::get<2>(a.rank));
        auto kb = std::make_tuple(b.sig.labels, std::get<1>(b.rank), std::get<2>(b.rank));
        return ka < kb;
    });
    RepresentativeTable table{problem, t, size_limit, {}, {}, {}};
    for (auto& b : chosen) {
        table.reps.push_back(b.graph);
        table.signatures.push_back(b.sig);
    }
    for (const auto& a : table.reps) {
        std::vector<int> row;
        for (const auto& b : table.reps) row.push_back(bruteforce_threshold(glue(a, b), problem));
        table.thr.push_back(std::move(row));
    }
    return table;
}

inline void write_table(std::ostream& out, const RepresentativeTable& table)
{
    out << "dskernel-representatives 1\n";
    out << "problem " << problem_name(table.problem) << '\n';
    out << "t " << table.t << '\n';
    out << "size_limit " << table.size_limit << '\n';
    out << "classes " << table.reps.size() << '\n';
    for (std::size_t i = 0; i < table.reps.size(); ++i) {
        const auto& r = table.reps[i];
        out << "rep " << i << " n " << r.num_vertices() << " labels";
        for (Vertex v : r.label_vertices()) out << ' ' << v + 1;
        out << " edges " << r.graph().num_edges();
        for (auto [u, v] : r.graph().sorted_edges()) out << ' ' << u + 1 << ' ' << v + 1;
        out << '\n';
        out << "sig " << i << ' ' << table.signatures[i].entries.size();
        for (const auto& [k, c] : table.signatures[i].entries) {
            out << ' ';
            for (std::size_t j = 0; j < k.size(); ++j) out << (j ? "," : "") << k[j];
            out << ':' << c;
        }
        out << '\n';
    }
    for (std::size_t i = 0; i < table.thr.size(); ++i) {
        out << "thr " << i;
        for (int v : table.thr[i]) {
            out << ' ';
            if (v >= kInfinity)
                out << "inf";
            else
                out << v;
        }
        out << '\n';
    }
}

inline std::string table_to_string(const RepresentativeTable& table)
{
    std::ostringstream os;
    write_table(os, table);
    return os.str();
}

inline RepresentativeTable read_table(std::istream& in)
{
    auto expect = [&](const std::string& word) {
        std::string w;
        require_input(static_cast<bool>(in >> w) && w == word, "table: expected '" + word + "'");
    };
    auto read_int = [&]() {
        long long v = 0;
        require_input(static_cast<bool>(in >> v), "table: expected integer");
        return static_cast<int>(v);
    };
    expect("dskernel-representatives");
    require_input(read_int() == 1, "table: unsupported version");
    RepresentativeTable table;
    expect("problem");
    std::string p;
    in >> p;
    require_input(p == "ds" || p == "cds", "table: unknown problem");
    table.problem = p == "ds" ? Problem::DS : Problem::CDS;
    expect("t");
    table.t = read_int();
    expect("size_limit");
    table.size_limit = read_int();
    expect("classes");
    const int count = read_int();
    require_input(count >= 0 && table.t >= 0, "table: bad header");
    for (int i = 0; i < count; ++i) {
        expect("rep");
        require_input(read_int() == i, "table: representatives out of order");
        expect("n");
        int n = read_int();
        expect("labels");
        std::vector<Vertex> lv;
        for (int l = 0; l < table.t; ++l) lv.push_back(read_int() - 1);
        expect("edges");
        int m = read_int();
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (int e = 0; e < m; ++e) {
            int u = read_int(), v = read_int();
            edges.emplace_back(u - 1, v - 1);
        }
        table.reps.emplace_back(Graph(n, edges), table.t, lv);
        expect("sig");
        require_input(read_int() == i, "table: signatures out of order");
        int entries = read_int();
        Signature sig{table.problem, table.t, table.reps.back().used_labels(), {}};
        for (int e = 0; e < entries; ++e) {
            std::string tok;
            in >> tok;
            auto colon = tok.find(':');
            require_input(colon != std::string::npos, "table: bad signature entry");
            std::vector<int> key;
            std::stringstream ks(tok.substr(0, colon));
            std::string part;
            while (std::getline(ks, part, ',')) key.push_back(std::stoi(part));
            sig.entries[key] = std::stoi(tok.substr(colon + 1));
        }
        table.signatures.push_back(std::move(sig));
    }
    for (int i = 0; i < count; ++i) {
        expect("thr");
        require_input(read_int() == i, "table: rows out of order");
        std::vector<int> row;
        for (int j = 0; j < count; ++j) {
            std::string tok;
            in >> tok;
            row.push_back(tok == "inf" ? kInfinity : std::stoi(tok));
        }
        table.thr.push_back(std::move(row));
    }
    return table;
}

inline RepresentativeTable table_from_string(const std::string& s)
{
    std::istringstream is(s);
    return read_table(is);
}

/// Outcome of translate-row replacement.
struct RowReplacement {
    std::size_t index = 0;        // chosen representative
    BoundariedGraph graph;        // the representative
    int constant = 0;             // -n0: (G+F, k) in P <=> (rep+F, k + constant) in P
    std::vector<int> row;         // Thr(g (+) Y_j)
    int verified_columns = 0;     // columns re-verified with a fresh solver run
};

/// Process-wide tallies of certified translate-row replacements.
struct TranslateCounters {
    std::atomic<long long> replacements{0};
    std::atomic<long long> verified_columns{0};
};

inline TranslateCounters& translate_counters()
{
    static TranslateCounters counters;
    return counters;
}

/// Computes the row [Thr(g (+) Y_j)], finds a representative row it translates, and
/// certifies the match by signature equivalence. Throws IncompletenessError when no
/// certified translate exists.
inline RowReplacement reduce_via_representatives(const BoundariedGraph& g_in, const RepresentativeTable& table)
{
    require_input(g_in.capacity() <= table.t, "boundary capacity exceeds the table");
    const BoundariedGraph g = g_in.capacity() == table.t ? g_in : g_in.with_capacity(table.t);
    const Problem problem = table.problem;
    RowReplacement out;
    for (const auto& y : table.reps) out.row.push_back(exact_threshold(glue(g, y), problem));
    std::optional<Signature> sig;
    auto certify = [&](std::size_t l, int n0) {
        if (!sig) {
            if (problem == Problem::CDS && g.num_vertices() > default_cds_signature_guard)
                throw IncompletenessError("connected signature not computable for a part of this size");
            sig = signature(g, problem);
        }
        auto c = signatures_equivalent(*sig, table.signatures[l]);
        return c && *c == -n0;
    };
    for (std::size_t l = 0; l < table.reps.size(); ++l) {
        std::optional<int> n0;
        bool ok = true;
        for (std::size_t j = 0; j < table.reps.size() && ok; ++j) {
            int a = out.row[j], b = table.thr[l][j];
            if ((a >= kInfinity) != (b >= kInfinity)) ok = false;
            else if (a < kInfinity) {
                if (n0 && *n0 != a - b) ok = false;
                n0 = a - b;
            }
        }
        if (!ok) continue;
        const int shift = n0.value_or(0);
        if (!certify(l, shift)) continue;
        out.index = l;
        out.graph = table.reps[l];
        out.constant = -shift;
        for (std::size_t j = 0; j < table.reps.size(); ++j) {
            int fresh = exact_threshold(glue(out.graph, table.reps[j]), problem);
            int expect = out.row[j] >= kInfinity ? kInfinity : out.row[j] - shift;
            ensure(fresh == expect, "translate row failed re-verification");
            ++out.verified_columns;
        }
        translate_counters().replacements += 1;
        translate_counters().verified_columns += out.verified_columns;
        return out;
    }
    throw IncompletenessError("no representative row translates the row of this part");
}

} // namespace dskernel
