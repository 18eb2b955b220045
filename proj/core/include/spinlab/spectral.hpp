#pragma once

#include <Eigen/Dense>

#include "spinlab/transition.hpp"

namespace spinlab {

struct SpectralReport {
    std::vector<double> eigenvalues; // descending; {1} for trivial support
    double gap = 1.0;                // 1 - lambda_2
    double abs_gap = 1.0;            // 1 - max_{i>=2} |lambda_i|
    double db_residual = 0.0;
};

/// max over pairs of |mu(s)P(s,t) - mu(t)P(t,s)|.
double detailed_balance_residual(const TransitionMatrix& tm);

/// Full spectrum via the symmetrized conjugate D^{1/2} P D^{-1/2}; requires
/// detailed balance residual <= 1e-8. Convention: gap = abs_gap = 1 when
/// |Omega| = 1.
SpectralReport spectral_report(const TransitionMatrix& tm);

/// ||mu P - mu||_inf.
double stationarity_residual(const TransitionMatrix& tm);

/// Real value per support state, in table order.
using ObservableFunction = Eigen::VectorXd;

struct ChainFunctionals {
    double variance = 0.0;
    double dirichlet = 0.0;
    /// max |bilinear - pair-sum| over both quantities.
    double formula_residual = 0.0;
};

ChainFunctionals chain_functionals(const TransitionMatrix& tm, const ObservableFunction& f);

/// Worst-case-pinning Glauber gap: min over all feasible pinnings of the
/// free vertices, with gap = 1 on trivial supports. Capped at 8 free
/// vertices (3^n pinning sweep).
double min_gap(const GibbsTable& table);

/// Approximate-tensorization constant C = 1/(n_free * glauber gap).
double tensorization_constant(const GibbsTable& table);
/// sum_v mu[Var_v f], the right-hand side of the tensorization inequality.
double sum_vertex_variances(const GibbsTable& table, const ObservableFunction& f);

struct MixingBound {
    double bound = 0.0;   // (1/gap_abs) log(1/(eps mu_min))
    double mu_min = 0.0;
    double b_lower = 0.0; // analytic per-vertex marginal lower bound; mu_min >= b^n
};

MixingBound mixing_time_bound(double gap_abs, const GibbsTable& table, double eps,
                              const TwoSpinSystem* sys = nullptr);

/// First t with max_x TV(P^t(x,.), mu) <= eps, scanning t = 0..t_max.
/// Returns -1 if not reached.
long exact_tv_mixing_time(const TransitionMatrix& tm, double eps, long t_max);

struct DirichletIdentity {
    double lhs = 0.0; // E_{P_FD}(f, f) from the exact field matrix
    double rhs = 0.0; // (Z_pi / theta^n) E_R[pi_R(1_R) Var_{pi^{1_R}}(f)]
    double residual = 0.0;
};

/// Dirichlet-form decomposition of the field dynamics, both sides evaluated
/// exactly (the right side enumerates all 2^n subsets R with binomial
/// weights, with the convention pi_R(1_R) Var = 0 when pi_R(1_R) = 0).
DirichletIdentity field_dirichlet_identity_check(const GibbsTable& table, double theta,
                                                 const ObservableFunction& f);

} // namespace spinlab
