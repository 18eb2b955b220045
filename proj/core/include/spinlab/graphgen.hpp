#pragma once

#include <vector>

#include "spinlab/graph.hpp"

namespace spinlab {

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int leaves);
Graph empty_graph(int n);
Graph single_edge();

/// All labeled graphs on n vertices (2^C(n,2) edge subsets), optionally
/// restricted to connected ones. Intended for exhaustive desk-scale sweeps.
std::vector<Graph> all_graphs(int n, bool connected_only);

} // namespace spinlab
