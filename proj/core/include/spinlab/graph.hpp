#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace spinlab {

/// Simple undirected graph on vertices 0..n-1.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // stored with u < v
    std::vector<std::vector<int>> adjacency; // sorted neighbor lists
    std::vector<int> degrees;

    Graph() = default;
    Graph(int n, std::vector<std::pair<int, int>> edge_list);

    int max_degree() const;
    bool connected() const;
};

// Edge-list text format: first line "n m"; next m lines "u v" with
// 0 <= u < v < n; lines starting with '#' are ignored.
Graph parse_edge_list(const std::string& text);
Graph load_edge_list(const std::string& path);
std::string format_edge_list(const Graph& g);

} // namespace spinlab
