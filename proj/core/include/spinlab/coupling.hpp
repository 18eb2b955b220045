#pragma once

#include <optional>
#include <vector>

#include "spinlab/gibbs.hpp"
#include "spinlab/spectral.hpp"
#include "spinlab/system.hpp"

namespace spinlab {

/// Weighted Hamming metric Phi(X,Y) = sum over disagreements of Phi_v.
struct WeightedHamming {
    std::vector<double> weights;

    /// Phi_v = 1 - delta/8 for leaves, Delta_v otherwise.
    static WeightedHamming degree_weights(const Graph& g, double delta);
    static WeightedHamming unit_weights(int n);
};

/// Dobrushin influence row R(v,u) = max_s |p_u(+1,s+1) - p_u(+1,s)| with
/// p_u(+1,s) = lambda_u beta^(Delta_u - s) / (gamma^s + lambda_u beta^(Delta_u - s)),
/// over s = 0..Delta_u-1 (convention 0^0 = 1). Depends on u only; exposed per
/// neighbor of v.
double dobrushin_influence(const TwoSpinSystem& sys, int u);
std::vector<double> dobrushin_row(const TwoSpinSystem& sys, int v);

/// f_{Delta_u}(lambda_u (beta gamma)^s / gamma^{Delta_u - 1}); equals
/// Delta_u * R-term at shift s.
double claim_isfd_factor(const TwoSpinSystem& sys, int u, int s);

struct CouplingCertificate {
    double r = 0.0; // one-step contraction rate of the weighted distance
    bool pass = false;
    int worst_vertex = -1;
    std::vector<double> expected_ratio; // per vertex: E[Phi']/Phi_v for the adjacent pair
    /// Exact variant restricted to feasible adjacent pairs (computed on the
    /// enumerated table when n is within cap), else unset.
    std::optional<double> r_feasible;
};

/// Path-coupling contraction certificate from the analytic one-step bound
/// E[Phi(X',Y')] <= Phi_v (1 - 1/n) + (1/n) sum_u Phi_u R(v,u) over the full
/// cube (the extended-conditional chain); r = 1 - max_v E/Phi_v, r = 1 when
/// n = 1. Fails (pass = false) when r <= 0.
CouplingCertificate path_coupling_certificate(const TwoSpinSystem& sys,
                                              const WeightedHamming& metric,
                                              bool with_feasible_variant = true);

/// Coupling-to-gap bridge: 1 - lambda_2(P) >= r - 1e-9. Requires a passing
/// certificate and a reversible matrix; throws otherwise.
bool coupling_gap_bridge(const CouplingCertificate& cert, const TransitionMatrix& tm);

} // namespace spinlab
