#include "spinlab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace spinlab {

Graph::Graph(int n_, std::vector<std::pair<int, int>> edge_list)
    : n(n_), edges(std::move(edge_list)) {
    if (n < 1) throw std::invalid_argument("graph needs n >= 1");
    std::set<std::pair<int, int>> seen;
    for (auto& [u, v] : edges) {
        if (u > v) std::swap(u, v);
        if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        if (u < 0 || v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (!seen.insert({u, v}).second)
            throw std::invalid_argument("duplicate edge");
    }
    std::sort(edges.begin(), edges.end());
    adjacency.assign(n, {});
    for (auto [u, v] : edges) {
        adjacency[u].push_back(v);
        adjacency[v].push_back(u);
    }
    degrees.resize(n);
    for (int v = 0; v < n; ++v) {
        std::sort(adjacency[v].begin(), adjacency[v].end());
        degrees[v] = static_cast<int>(adjacency[v].size());
    }
}

int Graph::max_degree() const {
    int d = 0;
    for (int x : degrees) d = std::max(d, x);
    return d;
}

bool Graph::connected() const {
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adjacency[u])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == n;
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (n < 0) {
            if (!(ls >> n >> m)) throw std::invalid_argument("edge list: bad header line");
            if (n < 1 || m < 0) throw std::invalid_argument("edge list: bad n or m");
            continue;
        }
        int u, v;
        if (!(ls >> u >> v)) throw std::invalid_argument("edge list: bad edge line: " + line);
        if (!(0 <= u && u < v && v < n))
            throw std::invalid_argument("edge list: edge must satisfy 0 <= u < v < n");
        edges.emplace_back(u, v);
    }
    if (n < 0) throw std::invalid_argument("edge list: missing header");
    if (static_cast<int>(edges.size()) != m)
        throw std::invalid_argument("edge list: edge count does not match header");
    return Graph(n, std::move(edges));
}

Graph load_edge_list(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open graph file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_edge_list(ss.str());
}

std::string format_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.n << ' ' << g.edges.size() << '\n';
    for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
    return out.str();
}

} // namespace spinlab
