#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spinlab/system.hpp"

namespace spinlab {

// Exact enumeration is capped: 2^n states for tables, and |Omega|^2 entries
// once a transition matrix is built on top.
inline constexpr int kTableCapN = 16;
inline constexpr int kMatrixCapN = 12;

/// Exact finite distribution over configurations, stored on its support in
/// canonical (lexicographic) order. Also used for conditioned and magnetized
/// distributions; `pinned` records vertices held fixed by conditioning.
struct GibbsTable {
    int n = 0;
    uint32_t pinned = 0;               // state-bit mask of pinned vertices
    std::vector<uint32_t> ranks;       // support, ascending
    std::vector<double> probs;         // normalized, > 0
    double z = 0.0;                    // partition value of the weight fn
    double log_z = 0.0;

    int size() const { return static_cast<int>(ranks.size()); }
    int free_count() const;
    uint32_t free_mask() const;
    std::vector<int> free_vertices() const;
    /// Index of a state in the support, or -1.
    int index_of(uint32_t rank) const;
    /// P(sigma_v = +1).
    double marginal_plus(int v) const;
    /// Spins seen at v across the support: bit0 for -1, bit1 for +1.
    int spin_support(int v) const;
    double min_prob() const;
};

GibbsTable enumerate_distribution(const TwoSpinSystem& sys);

/// Restriction to states agreeing with the pinning, renormalized.
/// Throws std::domain_error if the pinning is infeasible.
GibbsTable conditional_table(const GibbsTable& table, const Pinning& pin);
bool pinning_feasible(const GibbsTable& table, const Pinning& pin);

/// Imposes local fields phi on the free vertices: prob *= prod phi_v over
/// free v with sigma_v = +1, renormalized.
GibbsTable magnetize_table(const GibbsTable& table, const FieldVector& phi);
GibbsTable magnetize_table(const GibbsTable& table, double theta);

/// flip(mu, chi)(sigma) = mu(sigma . chi); an involution.
GibbsTable flip_table(const GibbsTable& table, const DirectionVector& chi);

/// Total-variation distance between two distributions on the same state
/// space (missing states count as probability zero).
double tv_distance(const GibbsTable& a, const GibbsTable& b);

} // namespace spinlab
