#pragma once

// Exact solvers: subset enumeration for (connected, coloured, distance-2)
// domination and a three-state dynamic programme over tree decompositions.

#include <climits>
#include <cstdint>
#include <optional>
#include <tuple>
#include <unordered_map>

#include "graph.hpp"
#include "treedec.hpp"

namespace dskernel {

enum class Problem { DS, CDS };

inline const char* problem_name(Problem p) { return p == Problem::DS ? "ds" : "cds"; }

inline constexpr int default_ds_guard = 24;
inline constexpr int default_cds_guard = 20;

/// Partition of V into X (already chosen), Y (dominated by X) and Z (still to dominate).
struct ColoredInstance {
    Graph graph;
    VertexSet x, y, z;

    /// Y = N(X) \ X and Z = V \ (X u Y).
    static ColoredInstance from_x(Graph g, VertexSet x)
    {
        x = make_set(std::move(x));
        auto y = open_neighborhood(g, x);
        auto z = set_difference(set_difference(g.vertices(), x), y);
        return {std::move(g), std::move(x), std::move(y), std::move(z)};
    }

    /// Explicit partition; throws InputError when x, y, z do not partition V.
    static ColoredInstance from_partition(Graph g, VertexSet x, VertexSet y, VertexSet z)
    {
        x = make_set(std::move(x));
        y = make_set(std::move(y));
        z = make_set(std::move(z));
        check_members(g, x);
        check_members(g, y);
        check_members(g, z);
        require_input(x.size() + y.size() + z.size() == static_cast<std::size_t>(g.num_vertices()) &&
                          set_union(set_union(x, y), z).size() == static_cast<std::size_t>(g.num_vertices()),
                      "X, Y, Z must partition the vertex set");
        return {std::move(g), std::move(x), std::move(y), std::move(z)};
    }

    /// Vertices of Z not already dominated by X.
    VertexSet targets() const { return set_difference(z, closed_neighborhood(graph, x)); }

    /// True iff X u d dominates Z and d avoids X.
    bool is_solution(const VertexSet& d) const
    {
        return set_intersection(d, x).empty() && set_subset(z, closed_neighborhood(graph, set_union(x, d)));
    }
};

namespace detail {

using Mask = std::uint64_t;

inline Mask bit(int i) { return Mask{1} << i; }

inline std::vector<Mask> closed_masks(const Graph& g)
{
    std::vector<Mask> m(static_cast<std::size_t>(g.num_vertices()), 0);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        m[v] = bit(v);
        for (Vertex u : g.neighbors(v)) m[v] |= bit(u);
    }
    return m;
}

inline Mask to_mask(const VertexSet& s)
{
    Mask m = 0;
    for (Vertex v : s) m |= bit(v);
    return m;
}

inline VertexSet from_mask(Mask m)
{
    VertexSet s;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1) s.push_back(i);
    return s;
}

inline bool mask_connected(const std::vector<Mask>& closed, Mask s)
{
    if (!s) return true;
    Mask reached = s & (~s + 1);
    for (;;) {
        Mask next = reached;
        for (Mask r = reached; r; r &= r - 1) next |= closed[__builtin_ctzll(r)] & s;
        if (next == reached) return reached == s;
        reached = next;
    }
}

/// Lexicographically first minimum set P of `candidates` with targets inside the
/// union of cover[p]; when `connected`, P must also induce a connected subgraph
/// w.r.t. `adj_closed`. Absent if the minimum exceeds cap.
class CoverSearch {
public:
    CoverSearch(std::vector<Mask> cover, Mask targets, Mask candidates, bool connected = false,
                std::vector<Mask> adj_closed = {})
        : cover_(std::move(cover)), targets_(targets), candidates_(candidates), connected_(connected),
          adj_(std::move(adj_closed))
    {
        const int n = static_cast<int>(cover_.size());
        last_cover_.assign(static_cast<std::size_t>(n), -1);
        for (int p = 0; p < n; ++p)
            if (candidates_ & bit(p))
                for (Mask c = cover_[p]; c; c &= c - 1) last_cover_[__builtin_ctzll(c)] = p;
    }

    std::optional<Mask> solve(int cap)
    {
        for (Mask t = targets_; t; t &= t - 1)
            if (last_cover_[__builtin_ctzll(t)] < 0) return std::nullopt;
        for (int k = 0; k <= cap; ++k) {
            Mask found = 0;
            if (dfs(0, 0, 0, k, found)) return found;
        }
        return std::nullopt;
    }

private:
    bool dfs(int from, Mask chosen, Mask covered, int left, Mask& out)
    {
        const Mask open = targets_ & ~covered;
        if (!open && (!connected_ || (chosen && mask_connected(adj_, chosen)))) {
            out = chosen;
            return true;
        }
        if (left == 0) return false;
        const int need = open ? last_cover_[__builtin_ctzll(open)] : static_cast<int>(cover_.size()) - 1;
        for (int p = from; p <= need; ++p) {
            if (!(candidates_ & bit(p))) continue;
            if (dfs(p + 1, chosen | bit(p), covered | cover_[p], left - 1, out)) return true;
        }
        return false;
    }

    std::vector<Mask> cover_;
    Mask targets_, candidates_;
    bool connected_;
    std::vector<Mask> adj_;
    std::vector<int> last_cover_;
};

inline void guard(const Graph& g, int limit, const char* what)
{
    if (g.num_vertices() > limit || g.num_vertices() > 62)
        throw GuardError(std::string(what) + ": " + std::to_string(g.num_vertices()) + " vertices exceed guard " +
                         std::to_string(limit));
}

} // namespace detail

/// Lexicographically first minimum dominating set, absent if larger than cap.
inline std::optional<VertexSet> ds_opt_bruteforce(const Graph& g, int cap, int guard_n = default_ds_guard)
{
    detail::guard(g, guard_n, "ds_opt_bruteforce");
    const detail::Mask all = detail::to_mask(g.vertices());
    detail::CoverSearch search(detail::closed_masks(g), all, all);
    auto r = search.solve(cap);
    if (!r) return std::nullopt;
    return detail::from_mask(*r);
}

/// Lexicographically first minimum connected dominating set of a connected graph.
inline std::optional<VertexSet> cds_opt_bruteforce(const Graph& g, int cap, int guard_n = default_cds_guard)
{
    require_input(is_connected(g), "connected domination needs a connected graph");
    detail::guard(g, guard_n, "cds_opt_bruteforce");
    if (g.empty()) return cap >= 0 ? std::optional<VertexSet>(VertexSet{}) : std::nullopt;
    const detail::Mask all = detail::to_mask(g.vertices());
    auto closed = detail::closed_masks(g);
    detail::CoverSearch search(closed, all, all, true, closed);
    auto r = search.solve(cap);
    if (!r) return std::nullopt;
    return detail::from_mask(*r);
}

/// Minimum D within Y u Z such that X u D dominates Z.
inline std::optional<VertexSet> colored_ds_opt(const ColoredInstance& inst, int cap, int guard_n = default_ds_guard)
{
    detail::guard(inst.graph, guard_n, "colored_ds_opt");
    detail::CoverSearch search(detail::closed_masks(inst.graph), detail::to_mask(inst.targets()),
                               detail::to_mask(set_union(inst.y, inst.z)));
    auto r = search.solve(cap);
    if (!r) return std::nullopt;
    return detail::from_mask(*r);
}

/// Minimum |P| with every vertex within distance 2 of P, absent if above cap.
inline std::optional<int> two_dominating_set_size(const Graph& g, int cap, int guard_n = default_ds_guard)
{
    detail::guard(g, guard_n, "two_dominating_set_size");
    auto closed = detail::closed_masks(g);
    std::vector<detail::Mask> two(closed.size(), 0);
    for (std::size_t v = 0; v < closed.size(); ++v)
        for (detail::Mask m = closed[v]; m; m &= m - 1) two[v] |= closed[__builtin_ctzll(m)];
    const detail::Mask all = detail::to_mask(g.vertices());
    detail::CoverSearch search(two, all, all);
    auto r = search.solve(cap);
    if (!r) return std::nullopt;
    return __builtin_popcountll(*r);
}

namespace detail {

/// One row of a boundary table: selection and domination bitmasks over the kept
/// vertices (in sorted order) and the minimum number of selected vertices.
struct DomState {
    std::uint32_t sel = 0;
    std::uint32_t dom = 0;
    int cost = 0;
};

/// Three-state domination DP (selected / dominated / not yet dominated). Every
/// vertex outside `keep` must end dominated; `keep` must lie in the root bag and
/// its states are reported instead of being forgotten.
inline std::vector<DomState> domination_dp_table(const Graph& g, const TreeDecomposition& td, const VertexSet& keep)
{
    require_input(td.width() < 20, "decomposition too wide for the dynamic programme");
    require_input(set_subset(keep, td.bag(td.root())), "kept vertices must lie in the root bag");
    using Table = std::pair<VertexSet, std::unordered_map<std::uint64_t, int>>;
    auto key = [](std::uint32_t sel, std::uint32_t dom) { return (std::uint64_t{sel} << 32) | dom; };
    auto relax = [](std::unordered_map<std::uint64_t, int>& m, std::uint64_t k, int c) {
        auto [it, inserted] = m.try_emplace(k, c);
        if (!inserted && c < it->second) it->second = c;
    };
    auto pos_of = [](const VertexSet& b, Vertex v) {
        return static_cast<int>(std::lower_bound(b.begin(), b.end(), v) - b.begin());
    };
    auto insert_bit = [](std::uint32_t m, int p) { return ((m >> p) << (p + 1)) | (m & ((1u << p) - 1)); };
    auto remove_bit = [](std::uint32_t m, int p) { return ((m >> (p + 1)) << p) | (m & ((1u << p) - 1)); };

    auto forget = [&](const Table& t, Vertex v) {
        int p = pos_of(t.first, v);
        Table out{set_difference(t.first, {v}), {}};
        for (auto [k, c] : t.second) {
            auto sel = static_cast<std::uint32_t>(k >> 32), dom = static_cast<std::uint32_t>(k);
            if (!(sel >> p & 1) && !(dom >> p & 1)) continue;
            relax(out.second, key(remove_bit(sel, p), remove_bit(dom, p)), c);
        }
        return out;
    };
    auto introduce = [&](const Table& t, Vertex v) {
        Table out{set_union(t.first, {v}), {}};
        int p = pos_of(out.first, v);
        std::uint32_t nbr = 0;
        for (std::size_t i = 0; i < out.first.size(); ++i)
            if (g.has_edge(v, out.first[i])) nbr |= 1u << i;
        for (auto [k, c] : t.second) {
            std::uint32_t sel = insert_bit(static_cast<std::uint32_t>(k >> 32), p);
            std::uint32_t dom = insert_bit(static_cast<std::uint32_t>(k), p);
            relax(out.second, key(sel | 1u << p, dom | (nbr & ~sel)), c + 1);
            relax(out.second, key(sel, (nbr & sel) ? dom | 1u << p : dom), c);
        }
        return out;
    };
    auto join = [&](const Table& a, const Table& b) {
        std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, int>>> by_sel;
        for (auto [k, c] : b.second)
            by_sel[static_cast<std::uint32_t>(k >> 32)].emplace_back(static_cast<std::uint32_t>(k), c);
        Table out{a.first, {}};
        for (auto [k, c] : a.second) {
            auto sel = static_cast<std::uint32_t>(k >> 32), dom = static_cast<std::uint32_t>(k);
            auto it = by_sel.find(sel);
            if (it == by_sel.end()) continue;
            int shared = __builtin_popcount(sel);
            for (auto [dom2, c2] : it->second) relax(out.second, key(sel, dom | dom2), c + c2 - shared);
        }
        return out;
    };

    std::vector<Table> tables(static_cast<std::size_t>(td.num_nodes()));
    const auto& order = td.preorder();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Node t = *it;
        const VertexSet& bag = td.bag(t);
        std::optional<Table> acc;
        for (Node c : td.children(t)) {
            Table ct = std::move(tables[c]);
            for (Vertex v : set_difference(ct.first, bag)) ct = forget(ct, v);
            for (Vertex v : set_difference(bag, ct.first)) ct = introduce(ct, v);
            acc = acc ? join(*acc, ct) : std::move(ct);
        }
        if (!acc) {
            Table leaf{{}, {{0, 0}}};
            for (Vertex v : bag) leaf = introduce(leaf, v);
            acc = std::move(leaf);
        }
        tables[t] = std::move(*acc);
    }
    Table root = std::move(tables[td.root()]);
    for (Vertex v : set_difference(root.first, keep)) root = forget(root, v);
    std::vector<DomState> out;
    out.reserve(root.second.size());
    for (auto [k, c] : root.second) out.push_back({static_cast<std::uint32_t>(k >> 32), static_cast<std::uint32_t>(k), c});
    std::sort(out.begin(), out.end(), [](const DomState& a, const DomState& b) {
        return std::tie(a.sel, a.dom, a.cost) < std::tie(b.sel, b.dom, b.cost);
    });
    return out;
}

} // namespace detail

/// Domination number via dynamic programming over a tree decomposition with three
/// states per bag vertex: selected, dominated, not yet dominated.
inline int ds_treewidth_dp(const Graph& g, const TreeDecomposition& td)
{
    require_input(td.host() == g, "decomposition is for a different graph");
    auto report = validate(td, false);
    require_input(report.ok, "invalid decomposition: " + report.summary());
    int best = INT_MAX;
    for (const auto& s : detail::domination_dp_table(g, td, {})) best = std::min(best, s.cost);
    ensure(best < INT_MAX, "dynamic programme found no dominating set");
    return best;
}

/// Smallest l with (g, l) a yes-instance: the (connected) domination number.
inline int threshold(const Graph& g, Problem problem, int guard_n = -1)
{
    if (problem == Problem::DS) {
        auto d = ds_opt_bruteforce(g, g.num_vertices(), guard_n < 0 ? default_ds_guard : guard_n);
        return static_cast<int>(d->size());
    }
    auto d = cds_opt_bruteforce(g, g.num_vertices(), guard_n < 0 ? default_cds_guard : guard_n);
    return static_cast<int>(d->size());
}

/// Domination number by the tree decomposition DP on a heuristic decomposition.
inline int domination_number(const Graph& g)
{
    if (g.empty()) return 0;
    return ds_treewidth_dp(g, heuristic_decomposition(g));
}

} // namespace dskernel
