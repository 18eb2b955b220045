#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinlab/gibbs.hpp"
#include "spinlab/system.hpp"

namespace spinlab {

/// Self-avoiding-walk tree of a connected graph from a root. Nodes are
/// walks; cycle-closing walks become leaves pinned by the ordering rule:
/// when the walk ...w ->x ...-> u steps back to the visited vertex w, the
/// leaf copy of w is pinned +1 iff the cycle left w through a smaller vertex
/// than it returns from (x < u in the total order), else -1.
struct SawTree {
    struct Node {
        int orig;                  // original vertex
        int parent;                // -1 at the root
        std::vector<int> children; // indices into nodes
        int8_t pin;                // 0 free, otherwise forced spin
        int depth;
    };
    std::vector<Node> nodes; // node 0 is the root
    int base_n = 0;          // vertices of the source graph

    int size() const { return static_cast<int>(nodes.size()); }
    int free_size() const;
    /// Free copies of an original vertex.
    std::vector<int> copies_of(int v) const;
};

inline constexpr int kSawCapNodes = 100000;

SawTree saw_tree(const Graph& g, int root, const std::vector<int>& ordering = {});
std::string saw_tree_dot(const SawTree& tree);

/// A two-spin instance living on an arbitrary rooted tree (the SAW tree or
/// any other), with per-node activities and optional forced spins.
struct TreeInstance {
    double beta = 0.0;
    double gamma = 1.0;
    std::vector<double> lambda;   // per node
    std::vector<int8_t> pin;      // 0 free, otherwise forced spin
    std::vector<int> parent;      // -1 at the root; children derived
    std::vector<std::vector<int>> children;
    std::vector<int> weight_degree; // degree used in weighted influence sums

    int size() const { return static_cast<int>(parent.size()); }
};

/// Instance on the SAW tree inheriting (lambda_v, Delta_v) from the system,
/// with an optional base-graph pinning copied onto every free copy.
TreeInstance saw_instance(const SawTree& tree, const TwoSpinSystem& sys,
                          const Pinning& pin = {});

/// Marginal ratios R = P(+1)/P(-1) of each subtree root, bottom-up:
/// R_u = lambda_u prod_w (beta R_w + 1)/(R_w + gamma), with pinned children
/// contributing the exact limits (beta for +1, 1/gamma for -1).
/// Pinned nodes report +inf / 0.
std::vector<double> tree_marginal_ratios(const TreeInstance& t);

/// P(node = +1) for every node, from a two-pass ratio recursion
/// (exact belief propagation).
std::vector<double> tree_marginals(const TreeInstance& t);

/// Signed influence of the root on every node: P(v=+1 | r=+1) - P(v=+1 | r=-1);
/// zero when the root's spin is forced. Root entry is 0.
std::vector<double> tree_influence_row(const TreeInstance& t, int root = 0);

/// Degree-weighted total influence sum_v weight_degree[v] * |I(r, v)| over
/// free nodes v != r.
double tree_total_influence(const TreeInstance& t, int root = 0);

/// max_u |I_G(r,u) - sum over free SAW copies of u of I_T(r, u_hat)|, the
/// influence-preservation identity of the SAW transform. I_G comes from
/// exact enumeration of the base system, I_T from the tree recursion.
double saw_influence_residual(const TwoSpinSystem& sys, int root,
                              const Pinning& pin = {});

} // namespace spinlab
