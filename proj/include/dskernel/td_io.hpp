#pragma once

// PACE-style decomposition files: `s td <#bags> <width+1> <n>`, `b <id> <v...>`,
// tree edges `<id> <id>`, plus `t <id> minor|deg` and `a <id> <v...>` node-type lines.
// Node and vertex ids are 1-indexed on disk.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "treedec.hpp"

namespace dskernel {

inline TreeDecomposition read_td(std::istream& in, const Graph& host)
{
    std::string line;
    int nbags = -1, declared_n = -1, wplus = -1;
    std::vector<VertexSet> bags;
    std::vector<char> seen;
    std::vector<std::pair<Node, Node>> edges;
    std::map<Node, NodeTag> tags;
    std::map<Node, VertexSet> apex;
    int lineno = 0;
    auto node_id = [&](long long id, const std::string& where) {
        require_input(id >= 1 && id <= nbags, where + "node id out of range");
        return static_cast<Node>(id - 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (tag == "s") {
            std::string td;
            require_input(nbags < 0, where + "duplicate header");
            require_input(static_cast<bool>(ls >> td >> nbags >> wplus >> declared_n) && td == "td" && nbags >= 1,
                          where + "bad header");
            require_input(declared_n == host.num_vertices(), where + "vertex count does not match graph");
            bags.assign(static_cast<std::size_t>(nbags), {});
            seen.assign(static_cast<std::size_t>(nbags), 0);
            continue;
        }
        require_input(nbags >= 0, where + "content before header");
        if (tag == "b" || tag == "a") {
            long long id = 0, v = 0;
            require_input(static_cast<bool>(ls >> id), where + "missing node id");
            Node t = node_id(id, where);
            VertexSet s;
            while (ls >> v) {
                require_input(v >= 1 && v <= host.num_vertices(), where + "vertex id out of range");
                s.push_back(static_cast<Vertex>(v - 1));
            }
            require_input(ls.eof(), where + "bad vertex token");
            if (tag == "b") {
                require_input(!seen[t], where + "duplicate bag");
                seen[t] = 1;
                bags[t] = make_set(std::move(s));
            } else {
                apex[t] = make_set(std::move(s));
            }
        } else if (tag == "t") {
            long long id = 0;
            std::string kind;
            require_input(static_cast<bool>(ls >> id >> kind), where + "bad type line");
            require_input(kind == "minor" || kind == "deg", where + "node type must be minor or deg");
            tags[node_id(id, where)] = kind == "minor" ? NodeTag::minor_structured : NodeTag::low_high_degree;
        } else {
            std::istringstream es(line);
            long long a = 0, b = 0;
            std::string rest;
            require_input(static_cast<bool>(es >> a >> b) && !(es >> rest), where + "unrecognised line");
            edges.emplace_back(node_id(a, where), node_id(b, where));
        }
    }
    require_input(nbags >= 1, "missing decomposition header");
    for (int t = 0; t < nbags; ++t) require_input(seen[t], "bag " + std::to_string(t + 1) + " missing");
    TreeDecomposition td(host, bags, edges);
    require_input(td.width() + 1 <= wplus, "declared width smaller than largest bag");
    for (auto [t, tg] : tags) td.set_node_type(t, {tg, apex.count(t) ? apex[t] : VertexSet{}});
    for (auto& [t, a] : apex)
        require_input(tags.count(t) && tags[t] == NodeTag::minor_structured, "apex set on a node not typed minor");
    return td;
}

inline void write_td(std::ostream& out, const TreeDecomposition& td)
{
    out << "s td " << td.num_nodes() << ' ' << td.width() + 1 << ' ' << td.host().num_vertices() << '\n';
    for (Node t = 0; t < td.num_nodes(); ++t) {
        out << "b " << t + 1;
        for (Vertex v : td.bag(t)) out << ' ' << v + 1;
        out << '\n';
    }
    auto edges = td.tree_edges();
    std::sort(edges.begin(), edges.end(), [](auto x, auto y) {
        return std::minmax(x.first, x.second) < std::minmax(y.first, y.second);
    });
    for (auto [a, b] : edges) out << std::min(a, b) + 1 << ' ' << std::max(a, b) + 1 << '\n';
    for (const auto& [t, type] : td.annotations()) {
        out << "t " << t + 1 << (type.tag == NodeTag::minor_structured ? " minor" : " deg") << '\n';
        if (type.tag == NodeTag::minor_structured && !type.apex_set.empty()) {
            out << "a " << t + 1;
            for (Vertex v : type.apex_set) out << ' ' << v + 1;
            out << '\n';
        }
    }
}

inline TreeDecomposition load_td(const std::string& path, const Graph& host)
{
    std::ifstream in(path);
    require_input(static_cast<bool>(in), "cannot open decomposition file " + path);
    return read_td(in, host);
}

} // namespace dskernel
