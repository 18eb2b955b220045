#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinlab/graph.hpp"

namespace spinlab {

/// Spin assignment, one of {-1,+1} per vertex.
using Configuration = std::vector<int8_t>;

/// Per-vertex positive local fields.
using FieldVector = std::vector<double>;

/// Per-vertex sign in {-1,+1}.
using DirectionVector = std::vector<int8_t>;

// States of n <= 32 spins are ranked lexicographically with -1 < +1 and
// vertex 0 most significant, so ascending rank is the canonical table order.
inline uint32_t state_bit(int v, int n) { return 1u << (n - 1 - v); }
inline int spin_at(uint32_t rank, int v, int n) {
    return (rank & state_bit(v, n)) ? +1 : -1;
}
uint32_t rank_of(const Configuration& sigma);
Configuration config_of(uint32_t rank, int n);
std::string spin_string(const Configuration& sigma); // e.g. "+--+"
Configuration parse_spin_string(const std::string& s);

/// Partial assignment on a subset of vertices. Bit conventions follow
/// state ranks: `domain` marks pinned vertices, `values` their +1 bits.
struct Pinning {
    uint32_t domain = 0;
    uint32_t values = 0;

    void pin(int v, int spin, int n) {
        domain |= state_bit(v, n);
        if (spin > 0)
            values |= state_bit(v, n);
        else
            values &= ~state_bit(v, n);
    }
    bool pins(int v, int n) const { return domain & state_bit(v, n); }
    bool empty() const { return domain == 0; }
    bool agrees(uint32_t rank) const { return (rank & domain) == values; }
};

/// Anti-ferromagnetic two-spin system: graph, edge interaction (beta, gamma)
/// and per-vertex activities lambda_v. Requires 0 <= beta <= gamma, gamma > 0,
/// lambda_v > 0; the system is anti-ferromagnetic iff beta*gamma < 1 (checked
/// on demand, not assumed).
struct TwoSpinSystem {
    Graph graph;
    double beta = 0.0;
    double gamma = 1.0;
    FieldVector fields; // lambda_v

    TwoSpinSystem() = default;
    TwoSpinSystem(Graph g, double beta, double gamma, double lambda);
    TwoSpinSystem(Graph g, double beta, double gamma, FieldVector lambdas);

    int n() const { return graph.n; }
    bool antiferromagnetic() const { return beta * gamma < 1.0; }
    bool uniform_field() const;

    static TwoSpinSystem hardcore(Graph g, double lambda) {
        return TwoSpinSystem(std::move(g), 0.0, 1.0, lambda);
    }
    static TwoSpinSystem ising(Graph g, double beta, double lambda) {
        return TwoSpinSystem(std::move(g), beta, beta, lambda);
    }
};

/// Unnormalized Gibbs weight beta^{m+} gamma^{m-} prod_{sigma_v=+1} lambda_v,
/// with the 0^0 = 1 convention when beta = 0 and m+ = 0.
double gibbs_weight(const TwoSpinSystem& sys, const Configuration& sigma);

/// Same in log space; -inf marks zero weight. `field_scale`, when nonempty,
/// multiplies lambda_v by a nonnegative per-vertex factor (scale 0 forbids +1).
double gibbs_log_weight(const TwoSpinSystem& sys, uint32_t rank,
                        const double* log_field_scale = nullptr);

/// Multiplies every activity by phi_v (phi_v > 0).
TwoSpinSystem magnetize(const TwoSpinSystem& sys, const FieldVector& phi);
TwoSpinSystem magnetize(const TwoSpinSystem& sys, double theta);

/// Exact heat-bath conditional P(sigma_u = +1 | rank off u), i.e.
/// lambda_u beta^{s+} / (gamma^{s-} + lambda_u beta^{s+}) over the +1/-1
/// neighbor counts, with the 0^0 = 1 convention. Defined for every boundary,
/// feasible or not (the extended conditional used in path coupling).
double conditional_plus(const TwoSpinSystem& sys, uint32_t rank, int u);

} // namespace spinlab
