#pragma once

#include <optional>
#include <vector>

#include "spinlab/system.hpp"

namespace spinlab {

/// Parameters of a tree-uniqueness question: anti-ferromagnetic
/// (0 <= beta <= gamma, gamma > 0, lambda > 0, beta*gamma < 1) with gap
/// delta in (0,1).
struct UniquenessQuery {
    double beta = 0.0;
    double gamma = 1.0;
    double lambda = 1.0;
    double delta = 0.1;

    void validate() const;
    bool antiferro() const { return beta * gamma < 1.0; }
};

/// F_d(x) = lambda ((beta x + 1)/(x + gamma))^d, decreasing for
/// beta*gamma < 1.
double tree_recursion(const UniquenessQuery& q, int d, double x);
/// f_d(x) = d (1 - beta gamma) x / ((beta x + 1)(x + gamma)) = |F_d'| / F_d * F_d.
double decay_function(const UniquenessQuery& q, int d, double x);

/// Unique positive fixed point of F_d, by bisection on x - F_d(x) over the
/// image bracket [min, max](lambda beta^d, lambda / gamma^d).
double fixed_point(const UniquenessQuery& q, int d);
/// f_d at the fixed point.
double decay_at_fixed_point(const UniquenessQuery& q, int d);

/// lambda_c(Delta) = (Delta-1)^(Delta-1) / (Delta-2)^Delta, Delta >= 3.
double lambda_c(int Delta);
/// beta = 0 threshold: lambda_{c,delta}(d) = (1-delta) d^d gamma^{d+1} /
/// (d-1+delta)^{d+1}.
double lambda_c_delta(double gamma, int d, double delta);

struct CriticalRoots {
    double x1, x2;         // roots of f_d(x) = 1 - delta
    double lambda1, lambda2;
    double zeta;           // d(1-beta gamma) - (1-delta)(1+beta gamma)
};

/// bar_Delta = (1 + sqrt(beta gamma)) / (1 - sqrt(beta gamma)).
double delta_bar(const UniquenessQuery& q);
/// Defined only for beta > 0 and d >= (1-delta) bar_Delta; nullopt otherwise.
std::optional<CriticalRoots> critical_roots(const UniquenessQuery& q, int d);

struct DegreeRecord {
    int d;
    double x_hat;
    double f_value;
    bool pass;
};

struct UniquenessReport {
    std::vector<DegreeRecord> degrees;
    bool pass = false;
    bool all_d_certificate = false; // Delta = infinity early-exit heuristic
    int stopped_at_d = 0;
    double delta = 0.0;
    double bar_delta = 0.0;
    std::vector<CriticalRoots> roots; // where the beta > 0 branch applies
    bool root_criterion_agrees = true;
};

/// Single-degree check: pass iff f_d(x_hat) <= 1 - delta.
UniquenessReport uniqueness_check(const UniquenessQuery& q, int d);
/// Up-to-Delta check over 1 <= d < Delta (Delta >= 3). Delta = nullopt means
/// +infinity; termination then relies on a heuristic plateau certificate
/// (labeled in the report), never on the definition itself.
UniquenessReport uniqueness_check_up_to(const UniquenessQuery& q,
                                        std::optional<int> Delta);

/// Largest gap delta for which (beta,gamma,lambda) is up-to-Delta unique:
/// 1 - max_{1 <= d < Delta} f_d(x_hat_d); nonpositive means not unique.
double solved_gap(double beta, double gamma, double lambda, int Delta);

/// Checks that d-uniqueness with gap delta is preserved when the activity is
/// biased along the good direction: lambda_v = lambda theta^{chi} for theta
/// on a grid in (0,1).
bool flip_invariance_check(const UniquenessQuery& q, int d, int Delta_v,
                           int theta_grid = 16);

} // namespace spinlab
