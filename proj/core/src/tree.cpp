#include "spinlab/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "spinlab/influence.hpp"

namespace spinlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

int SawTree::free_size() const {
    int c = 0;
    for (const auto& nd : nodes) c += nd.pin == 0;
    return c;
}

std::vector<int> SawTree::copies_of(int v) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (nodes[i].orig == v && nodes[i].pin == 0) out.push_back(i);
    return out;
}

SawTree saw_tree(const Graph& g, int root, const std::vector<int>& ordering) {
    if (root < 0 || root >= g.n) throw std::invalid_argument("root out of range");
    if (!g.connected()) throw std::invalid_argument("SAW tree needs a connected graph");
    std::vector<int> ord(g.n);
    if (ordering.empty()) {
        for (int v = 0; v < g.n; ++v) ord[v] = v;
    } else {
        if (static_cast<int>(ordering.size()) != g.n)
            throw std::invalid_argument("ordering must be a permutation of V");
        std::vector<char> seen(g.n, 0);
        for (int v = 0; v < g.n; ++v) {
            if (ordering[v] < 0 || ordering[v] >= g.n || seen[ordering[v]])
                throw std::invalid_argument("ordering must be a permutation of V");
            seen[ordering[v]] = 1;
        }
        for (int pos = 0; pos < g.n; ++pos) ord[ordering[pos]] = pos;
    }

    SawTree tree;
    tree.base_n = g.n;
    tree.nodes.push_back({root, -1, {}, 0, 0});
    // per-node visited-set masks; walks have length <= n
    std::vector<uint64_t> visited{1ull << root};
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        if (tree.nodes[i].pin) continue; // cycle-closing leaves are never extended
        const int u = tree.nodes[i].orig;
        for (int w : g.adjacency[u]) {
            const int parent = tree.nodes[i].parent;
            if (parent >= 0 && tree.nodes[parent].orig == w) continue; // no backtrack
            if (tree.size() >= kSawCapNodes) throw std::runtime_error("SAW tree cap exceeded");
            if (visited[i] & (1ull << w)) {
                // cycle closes at w: find x, the walk's successor of w
                int cur = static_cast<int>(i), prev = -1;
                while (tree.nodes[cur].orig != w) {
                    prev = cur;
                    cur = tree.nodes[cur].parent;
                }
                const int x = tree.nodes[prev].orig;
                const int8_t pin = ord[x] < ord[u] ? int8_t{1} : int8_t{-1};
                tree.nodes.push_back({w, static_cast<int>(i), {}, pin,
                                      tree.nodes[i].depth + 1});
                visited.push_back(visited[i]); // leaf: never extended
            } else {
                tree.nodes.push_back({w, static_cast<int>(i), {}, 0,
                                      tree.nodes[i].depth + 1});
                visited.push_back(visited[i] | (1ull << w));
            }
            tree.nodes[i].children.push_back(tree.size() - 1);
        }
    }
    return tree;
}

std::string saw_tree_dot(const SawTree& tree) {
    std::ostringstream out;
    out << "digraph saw {\n";
    for (int i = 0; i < tree.size(); ++i) {
        const auto& nd = tree.nodes[i];
        out << "  n" << i << " [label=\"v" << nd.orig;
        if (nd.pin) out << (nd.pin > 0 ? " +1" : " -1");
        out << "\"";
        if (nd.pin) out << " shape=box";
        out << "];\n";
        if (nd.parent >= 0) out << "  n" << nd.parent << " -> n" << i << ";\n";
    }
    out << "}\n";
    return out.str();
}

TreeInstance saw_instance(const SawTree& tree, const TwoSpinSystem& sys,
                          const Pinning& pin) {
    if (tree.base_n != sys.graph.n) throw std::invalid_argument("graph size mismatch");
    TreeInstance t;
    t.beta = sys.beta;
    t.gamma = sys.gamma;
    const int m = tree.size();
    t.lambda.resize(m);
    t.pin.resize(m);
    t.parent.resize(m);
    t.children.resize(m);
    t.weight_degree.resize(m);
    for (int i = 0; i < m; ++i) {
        const auto& nd = tree.nodes[i];
        t.lambda[i] = sys.fields[nd.orig];
        t.parent[i] = nd.parent;
        t.children[i] = nd.children;
        t.weight_degree[i] = sys.graph.degrees[nd.orig];
        t.pin[i] = nd.pin;
        if (!nd.pin && pin.pins(nd.orig, sys.graph.n))
            t.pin[i] = (pin.values & state_bit(nd.orig, sys.graph.n)) ? 1 : -1;
    }
    return t;
}

namespace {

// edge factor toward a neighbor with subtree ratio r; exact limits at the
// pinned endpoints (hardcore pins force true zeros, not overflow artifacts)
double edge_factor(const TreeInstance& t, double r) {
    if (r == kInf) return t.beta;
    return (t.beta * r + 1.0) / (r + t.gamma);
}

double pin_ratio(int8_t pin) { return pin > 0 ? kInf : 0.0; }

// subtree ratios, children before parents (nodes are in BFS-like order:
// parent index < child index always holds for saw_instance trees)
std::vector<double> up_ratios(const TreeInstance& t) {
    const int m = t.size();
    std::vector<double> up(m);
    for (int i = m - 1; i >= 0; --i) {
        if (t.pin[i]) {
            up[i] = pin_ratio(t.pin[i]);
            continue;
        }
        double r = t.lambda[i];
        for (int c : t.children[i]) r *= edge_factor(t, up[c]);
        up[i] = r;
    }
    return up;
}

// message into each node from its parent side: the ratio of the rest of the
// tree at the parent, excluding this child's subtree; inf/0 when the parent
// is pinned
std::vector<double> down_messages(const TreeInstance& t, const std::vector<double>& up) {
    const int m = t.size();
    std::vector<double> down(m, -1.0); // -1 marks "no parent"
    for (int p = 0; p < m; ++p) {
        if (t.children[p].empty()) continue;
        if (t.pin[p]) {
            for (int c : t.children[p]) down[c] = pin_ratio(t.pin[p]);
            continue;
        }
        const auto& ch = t.children[p];
        const int k = static_cast<int>(ch.size());
        std::vector<double> pref(k + 1, 1.0), suf(k + 1, 1.0);
        for (int i = 0; i < k; ++i) pref[i + 1] = pref[i] * edge_factor(t, up[ch[i]]);
        for (int i = k - 1; i >= 0; --i) suf[i] = suf[i + 1] * edge_factor(t, up[ch[i]]);
        double base = t.lambda[p];
        if (down[p] >= 0) base *= edge_factor(t, down[p]);
        for (int i = 0; i < k; ++i) down[ch[i]] = base * pref[i] * suf[i + 1];
    }
    return down;
}

} // namespace

std::vector<double> tree_marginal_ratios(const TreeInstance& t) { return up_ratios(t); }

std::vector<double> tree_marginals(const TreeInstance& t) {
    const auto up = up_ratios(t);
    const auto down = down_messages(t, up);
    const int m = t.size();
    std::vector<double> marg(m);
    for (int i = 0; i < m; ++i) {
        if (t.pin[i]) {
            marg[i] = t.pin[i] > 0 ? 1.0 : 0.0;
            continue;
        }
        double r = up[i];
        if (down[i] >= 0) r *= edge_factor(t, down[i]);
        marg[i] = r / (1.0 + r);
    }
    return marg;
}

std::vector<double> tree_influence_row(const TreeInstance& t, int root) {
    const int m = t.size();
    std::vector<double> row(m, 0.0);
    if (t.pin[root]) return row;
    // feasibility of both root spins under the pins
    const auto marg0 = tree_marginals(t);
    if (!(marg0[root] > 0.0 && marg0[root] < 1.0)) return row;
    TreeInstance plus = t, minus = t;
    plus.pin[root] = 1;
    minus.pin[root] = -1;
    const auto mp = tree_marginals(plus);
    const auto mm = tree_marginals(minus);
    for (int v = 0; v < m; ++v)
        if (v != root && !t.pin[v]) row[v] = mp[v] - mm[v];
    return row;
}

double tree_total_influence(const TreeInstance& t, int root) {
    const auto row = tree_influence_row(t, root);
    double total = 0.0;
    for (int v = 0; v < t.size(); ++v)
        if (v != root && !t.pin[v]) total += t.weight_degree[v] * std::abs(row[v]);
    return total;
}

double saw_influence_residual(const TwoSpinSystem& sys, int root, const Pinning& pin) {
    const GibbsTable table = enumerate_distribution(sys);
    const InfluenceMatrix signed_g =
        influence_matrix(table, pin, InfluenceFlavor::Signed);
    const SawTree tree = saw_tree(sys.graph, root);
    const TreeInstance inst = saw_instance(tree, sys, pin);
    const auto tree_row = tree_influence_row(inst, 0);

    int root_idx = -1;
    for (size_t i = 0; i < signed_g.vertices.size(); ++i)
        if (signed_g.vertices[i] == root) root_idx = static_cast<int>(i);
    if (root_idx < 0) throw std::invalid_argument("root is pinned");

    double worst = 0.0;
    for (size_t ui = 0; ui < signed_g.vertices.size(); ++ui) {
        const int u = signed_g.vertices[ui];
        if (u == root) continue;
        double tree_sum = 0.0;
        for (int i = 0; i < tree.size(); ++i)
            if (tree.nodes[i].orig == u && !inst.pin[i] && i != 0) tree_sum += tree_row[i];
        worst = std::max(worst, std::abs(signed_g.psi(root_idx, ui) - tree_sum));
    }
    return worst;
}

} // namespace spinlab
