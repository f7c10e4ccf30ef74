#pragma once

// Text format: `c` comment lines, header `p ds <n> <m>`, edge lines `e <u> <v>` (1-indexed).

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "graph.hpp"

namespace dskernel {

inline Graph read_graph(std::istream& in)
{
    std::string line;
    int n = -1;
    long long m = -1;
    std::vector<std::pair<Vertex, Vertex>> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (tag == "p") {
            std::string kind;
            require_input(n < 0, where + "duplicate header");
            require_input(static_cast<bool>(ls >> kind >> n >> m) && n >= 0 && m >= 0, where + "bad header");
        } else if (tag == "e") {
            require_input(n >= 0, where + "edge before header");
            long long u = 0, v = 0;
            require_input(static_cast<bool>(ls >> u >> v), where + "bad edge line");
            require_input(u >= 1 && u <= n && v >= 1 && v <= n, where + "vertex id out of range");
            edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
        } else {
            throw InputError(where + "unknown line tag '" + tag + "'");
        }
    }
    require_input(n >= 0, "missing header line");
    require_input(static_cast<long long>(edges.size()) == m,
                  "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    return Graph(n, edges);
}

inline void write_graph(std::ostream& out, const Graph& g)
{
    out << "p ds " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edge_list()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

inline std::string graph_to_string(const Graph& g)
{
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

inline Graph graph_from_string(const std::string& s)
{
    std::istringstream is(s);
    return read_graph(is);
}

inline Graph load_graph(const std::string& path)
{
    std::ifstream in(path);
    require_input(static_cast<bool>(in), "cannot open graph file " + path);
    return read_graph(in);
}

} // namespace dskernel
