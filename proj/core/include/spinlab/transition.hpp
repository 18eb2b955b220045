#pragma once

#include <Eigen/Dense>

#include "spinlab/dynamics.hpp"
#include "spinlab/gibbs.hpp"

namespace spinlab {

/// Exact one-step transition matrix over the support of a distribution,
/// rows/columns indexed by the table's canonical state order.
struct TransitionMatrix {
    GibbsTable table; // stationary distribution
    Eigen::MatrixXd P;
    std::string dynamics;
};

TransitionMatrix transition_matrix(const DynamicsSpec& spec, const GibbsTable& table);

TransitionMatrix glauber_matrix(const GibbsTable& table);
TransitionMatrix block_matrix(const GibbsTable& table, int ell);
/// Closed form of the field dynamics: P(s,t) = sum over R subseteq
/// s+ cap t+ of (1-theta)^|R| theta^{|s+|-|R|} pi^{1_R}(t), pi = mu^(theta).
TransitionMatrix field_matrix(const GibbsTable& table, double theta);
/// Hypergeometric block chain: b = a/k drawn without replacement, adaptive
/// block selection, locally magnetized resampling with fields b_v on S and 1
/// off S. Entrywise, this converges to the field dynamics as k grows.
TransitionMatrix projected_block_matrix(const GibbsTable& table, int k, int ell);

/// Pushforward of the uniform ell-block dynamics on the k-transform of the
/// table through the projection map; rows of a projection class must agree
/// (checked), which is the identity making the chain M well defined.
TransitionMatrix projected_block_matrix_by_pushforward(const GibbsTable& table,
                                                       int k, int ell);

double max_entry_distance(const TransitionMatrix& a, const TransitionMatrix& b);

} // namespace spinlab
