#include "spinlab/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace spinlab {

double detailed_balance_residual(const TransitionMatrix& tm) {
    const int m = tm.table.size();
    double res = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            res = std::max(res, std::abs(tm.table.probs[i] * tm.P(i, j) -
                                         tm.table.probs[j] * tm.P(j, i)));
    return res;
}

SpectralReport spectral_report(const TransitionMatrix& tm) {
    const int m = tm.table.size();
    SpectralReport rep;
    rep.db_residual = detailed_balance_residual(tm);
    if (m == 1) {
        rep.eigenvalues = {1.0};
        return rep;
    }
    if (rep.db_residual > 1e-8)
        throw std::domain_error("transition matrix is not reversible");
    Eigen::VectorXd sqrt_mu(m);
    for (int i = 0; i < m; ++i) sqrt_mu(i) = std::sqrt(tm.table.probs[i]);
    Eigen::MatrixXd A(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) A(i, j) = sqrt_mu(i) * tm.P(i, j) / sqrt_mu(j);
    A = 0.5 * (A + A.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    rep.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + m);
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), std::greater<>());
    if (std::abs(rep.eigenvalues[0] - 1.0) > 1e-9)
        throw std::runtime_error("top eigenvalue deviates from 1");
    rep.gap = 1.0 - rep.eigenvalues[1];
    double mod = 0.0;
    for (size_t i = 1; i < rep.eigenvalues.size(); ++i)
        mod = std::max(mod, std::abs(rep.eigenvalues[i]));
    rep.abs_gap = 1.0 - mod;
    return rep;
}

double stationarity_residual(const TransitionMatrix& tm) {
    const int m = tm.table.size();
    double res = 0.0;
    for (int j = 0; j < m; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += tm.table.probs[i] * tm.P(i, j);
        res = std::max(res, std::abs(s - tm.table.probs[j]));
    }
    return res;
}

ChainFunctionals chain_functionals(const TransitionMatrix& tm, const ObservableFunction& f) {
    const int m = tm.table.size();
    if (f.size() != m) throw std::invalid_argument("observable dimension mismatch");
    const auto& mu = tm.table.probs;
    double mean = 0.0, mean2 = 0.0;
    for (int i = 0; i < m; ++i) {
        mean += mu[i] * f(i);
        mean2 += mu[i] * f(i) * f(i);
    }
    const double var_bilinear = mean2 - mean * mean;
    double var_pairs = 0.0, dir_pairs = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double d2 = (f(i) - f(j)) * (f(i) - f(j));
            var_pairs += 0.5 * mu[i] * mu[j] * d2;
            dir_pairs += 0.5 * mu[i] * tm.P(i, j) * d2;
        }
    // <f, (I-P) f>_mu
    double dir_bilinear = 0.0;
    for (int i = 0; i < m; ++i) {
        double pf = 0.0;
        for (int j = 0; j < m; ++j) pf += tm.P(i, j) * f(j);
        dir_bilinear += mu[i] * f(i) * (f(i) - pf);
    }
    ChainFunctionals out;
    out.variance = var_pairs;
    out.dirichlet = dir_pairs;
    out.formula_residual = std::max(std::abs(var_pairs - var_bilinear),
                                    std::abs(dir_pairs - dir_bilinear));
    return out;
}

double min_gap(const GibbsTable& table) {
    const auto free_vs = table.free_vertices();
    const int f = static_cast<int>(free_vs.size());
    if (f > 8) throw std::invalid_argument("min_gap pinning sweep capped at 8 free vertices");
    double best = 1.0;
    long total = 1;
    for (int i = 0; i < f; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
        Pinning pin;
        long c = code;
        int pinned_count = 0;
        for (int i = 0; i < f; ++i) {
            const int trit = c % 3;
            c /= 3;
            if (trit == 1) pin.pin(free_vs[i], -1, table.n), ++pinned_count;
            if (trit == 2) pin.pin(free_vs[i], +1, table.n), ++pinned_count;
        }
        if (pinned_count == f) continue; // fully pinned: gap 1 by convention
        if (!pinning_feasible(table, pin)) continue;
        const GibbsTable cond = conditional_table(table, pin);
        if (cond.size() == 1) continue; // trivial support: gap 1 by convention
        best = std::min(best, spectral_report(glauber_matrix(cond)).gap);
    }
    return best;
}

double tensorization_constant(const GibbsTable& table) {
    if (table.size() < 2) throw std::invalid_argument("trivial support");
    const double gap = spectral_report(glauber_matrix(table)).gap;
    return 1.0 / (table.free_count() * gap);
}

double sum_vertex_variances(const GibbsTable& table, const ObservableFunction& f) {
    const int m = table.size();
    if (f.size() != m) throw std::invalid_argument("observable dimension mismatch");
    double total = 0.0;
    for (int v : table.free_vertices()) {
        const uint32_t b = state_bit(v, table.n);
        // group support by the configuration off v
        for (int i = 0; i < m; ++i) {
            if (table.ranks[i] & b) continue; // visit each pair once, from the -1 side
            const int j = table.index_of(table.ranks[i] | b);
            if (j < 0) continue;
            const double pi = table.probs[i], pj = table.probs[j];
            const double cond_var = pi * pj / ((pi + pj) * (pi + pj)) *
                                    (f(i) - f(j)) * (f(i) - f(j));
            total += (pi + pj) * cond_var;
        }
    }
    return total;
}

MixingBound mixing_time_bound(double gap_abs, const GibbsTable& table, double eps,
                              const TwoSpinSystem* sys) {
    if (!(gap_abs > 0 && gap_abs <= 1)) throw std::invalid_argument("gap must lie in (0,1]");
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must lie in (0,1)");
    MixingBound out;
    out.mu_min = table.min_prob();
    out.bound = std::max(0.0, std::log(1.0 / (eps * out.mu_min)) / gap_abs);
    if (sys) {
        // 1/b <= (lambda + 1/lambda) alpha^Delta with alpha = 1/beta + 2 for
        // beta > 0 and alpha = gamma + 1/gamma + 2 for beta = 0, per vertex.
        double b = 1.0;
        const double alpha = sys->beta > 0 ? 1.0 / sys->beta + 2.0
                                           : sys->gamma + 1.0 / sys->gamma + 2.0;
        for (int v = 0; v < sys->graph.n; ++v) {
            const double lv = sys->fields[v];
            const double inv_b = (lv + 1.0 / lv) * std::pow(alpha, sys->graph.degrees[v]);
            b = std::min(b, 1.0 / inv_b);
        }
        out.b_lower = b;
    }
    return out;
}

long exact_tv_mixing_time(const TransitionMatrix& tm, double eps, long t_max) {
    const int m = tm.table.size();
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(m, m);
    for (long t = 0; t <= t_max; ++t) {
        double worst = 0.0;
        for (int i = 0; i < m; ++i) {
            double tv = 0.0;
            for (int j = 0; j < m; ++j) tv += std::abs(M(i, j) - tm.table.probs[j]);
            worst = std::max(worst, tv / 2.0);
        }
        if (worst <= eps) return t;
        M = M * tm.P;
    }
    return -1;
}

DirichletIdentity field_dirichlet_identity_check(const GibbsTable& table, double theta,
                                                 const ObservableFunction& f) {
    const int m = table.size();
    if (f.size() != m) throw std::invalid_argument("observable dimension mismatch");
    const TransitionMatrix fd = field_matrix(table, theta);
    DirichletIdentity out;
    out.lhs = chain_functionals(fd, f).dirichlet;

    const uint32_t free = table.free_mask();
    const int nf = table.free_count();
    const GibbsTable pi = magnetize_table(table, theta);
    // Z_pi = sum_sigma mu(sigma) theta^{|sigma+|} over the free vertices
    double z_pi = 0.0;
    for (int i = 0; i < m; ++i)
        z_pi += table.probs[i] * std::pow(theta, std::popcount(table.ranks[i] & free));

    std::vector<int> free_bits;
    for (int b = 0; b < 32; ++b)
        if (free & (1u << b)) free_bits.push_back(b);
    double expectation = 0.0;
    for (uint32_t code = 0; code < (1u << nf); ++code) {
        uint32_t r_mask = 0;
        for (int i = 0; i < nf; ++i)
            if (code & (1u << i)) r_mask |= 1u << free_bits[i];
        const int sz = std::popcount(r_mask);
        const double pr = std::pow(1.0 - theta, sz) * std::pow(theta, nf - sz);
        double mass = 0.0, mean = 0.0, mean2 = 0.0;
        for (int j = 0; j < m; ++j) {
            if ((pi.ranks[j] & r_mask) != r_mask) continue;
            mass += pi.probs[j];
            mean += pi.probs[j] * f(j);
            mean2 += pi.probs[j] * f(j) * f(j);
        }
        if (mass == 0.0) continue; // convention: pi_R(1_R) Var = 0
        const double var = mean2 / mass - (mean / mass) * (mean / mass);
        expectation += pr * mass * var;
    }
    out.rhs = z_pi / std::pow(theta, nf) * expectation;
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

} // namespace spinlab
