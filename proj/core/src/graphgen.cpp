#include "spinlab/graphgen.hpp"

#include <stdexcept>

namespace spinlab {

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return Graph(n, e);
}

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    auto g = path_graph(n);
    std::vector<std::pair<int, int>> e = g.edges;
    e.emplace_back(0, n - 1);
    return Graph(n, e);
}

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph(n, e);
}

Graph star_graph(int leaves) {
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v <= leaves; ++v) e.emplace_back(0, v);
    return Graph(leaves + 1, e);
}

Graph empty_graph(int n) { return Graph(n, {}); }

Graph single_edge() { return Graph(2, {{0, 1}}); }

std::vector<Graph> all_graphs(int n, bool connected_only) {
    if (n < 1 || n > 7) throw std::invalid_argument("graph enumeration supports 1 <= n <= 7");
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
    const int m = static_cast<int>(slots.size());
    std::vector<Graph> out;
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) edges.push_back(slots[i]);
        Graph g(n, std::move(edges));
        if (connected_only && !g.connected()) continue;
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace spinlab
