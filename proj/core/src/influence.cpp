#include "spinlab/influence.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace spinlab {

InfluenceMatrix influence_matrix(const GibbsTable& table, const Pinning& pin,
                                 InfluenceFlavor flavor) {
    const GibbsTable base = pin.empty() ? table : conditional_table(table, pin);
    InfluenceMatrix out;
    out.flavor = flavor;
    out.vertices = base.free_vertices();
    const int d = static_cast<int>(out.vertices.size());
    out.psi = Eigen::MatrixXd::Zero(d, d);
    const int m = base.size();
    std::vector<double> mass(2), plus_mass(d);
    for (int ui = 0; ui < d; ++ui) {
        const int u = out.vertices[ui];
        const uint32_t ub = state_bit(u, base.n);
        if (base.spin_support(u) != 3) continue; // trivial support at u: zero row
        // conditional marginals of every v given u <- -1 / +1, one pass each
        mass[0] = mass[1] = 0.0;
        std::vector<double> plus_minus(d, 0.0), plus_plus(d, 0.0);
        for (int s = 0; s < m; ++s) {
            const int side = (base.ranks[s] & ub) ? 1 : 0;
            mass[side] += base.probs[s];
            for (int vi = 0; vi < d; ++vi) {
                if (base.ranks[s] & state_bit(out.vertices[vi], base.n)) {
                    (side ? plus_plus : plus_minus)[vi] += base.probs[s];
                }
            }
        }
        for (int vi = 0; vi < d; ++vi) {
            if (vi == ui) continue;
            const double diff = plus_plus[vi] / mass[1] - plus_minus[vi] / mass[0];
            out.psi(ui, vi) = flavor == InfluenceFlavor::Absolute ? std::abs(diff) : diff;
        }
    }
    return out;
}

double spectral_radius(const Eigen::MatrixXd& m) {
    if (m.rows() == 0) return 0.0;
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    const Eigen::MatrixXd a = m / scale;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() == Eigen::Success)
        return scale * solver.eigenvalues().cwiseAbs().maxCoeff();
    // The real Schur iteration can stall on near-nilpotent matrices (entries
    // at machine-epsilon scale); the complex QR path handles those.
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> csolver(
        a.cast<std::complex<double>>(), /*computeEigenvectors=*/false);
    if (csolver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    return scale * csolver.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

template <typename Fn>
void for_each_feasible_pinning(const GibbsTable& table, Fn&& fn) {
    const auto free_vs = table.free_vertices();
    const int f = static_cast<int>(free_vs.size());
    long total = 1;
    for (int i = 0; i < f; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
        Pinning pin;
        long c = code;
        for (int i = 0; i < f; ++i) {
            const int trit = c % 3;
            c /= 3;
            if (trit == 1) pin.pin(free_vs[i], -1, table.n);
            if (trit == 2) pin.pin(free_vs[i], +1, table.n);
        }
        if (!pinning_feasible(table, pin)) continue;
        fn(pin);
    }
}

} // namespace

double max_rho_over_pinnings(const GibbsTable& table, InfluenceFlavor flavor) {
    if (table.free_count() > 10)
        throw std::invalid_argument("pinning sweep capped at 10 free vertices");
    double best = 0.0;
    for_each_feasible_pinning(table, [&](const Pinning& pin) {
        best = std::max(best, spectral_radius(influence_matrix(table, pin, flavor)));
    });
    return best;
}

SIEstimate complete_si_estimate(const GibbsTable& table, const SIGridSpec& grid) {
    const int n = table.n;
    if (table.free_count() > 6)
        throw std::invalid_argument("complete SI sweep capped at 6 free vertices");
    SIEstimate est;
    std::mt19937_64 eng(grid.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto random_field = [&]() {
        FieldVector phi(n);
        for (int v = 0; v < n; ++v) {
            double x = unif(eng);
            while (x == 0.0) x = unif(eng);
            phi[v] = x;
        }
        return phi;
    };
    for (int i = 1; i <= grid.scalar_points; ++i)
        est.fields.emplace_back(n, static_cast<double>(i) / grid.scalar_points);
    for (int i = 0; i < grid.random_points; ++i) est.fields.push_back(random_field());

    auto evaluate = [&](size_t first) {
        for (size_t fi = first; fi < est.fields.size(); ++fi) {
            const GibbsTable mag = magnetize_table(table, est.fields[fi]);
            double field_best = 0.0;
            for_each_feasible_pinning(mag, [&](const Pinning& pin) {
                const auto abs_m = influence_matrix(mag, pin, InfluenceFlavor::Absolute);
                const double rho = spectral_radius(abs_m);
                if (grid.track_signed) {
                    const double rho_signed = spectral_radius(
                        influence_matrix(mag, pin, InfluenceFlavor::Signed));
                    const double fg = std::abs(rho - rho_signed);
                    est.flavor_gap = std::max(est.flavor_gap, fg);
                    if (fg > 1e-9) ++est.flavor_mismatches;
                }
                if (grid.collect_rows)
                    est.rows.push_back({static_cast<int>(fi), pin.domain, pin.values, rho});
                field_best = std::max(field_best, rho);
                if (rho > est.eta_hat) {
                    est.eta_hat = rho;
                    est.argmax_field = static_cast<int>(fi);
                    est.argmax_field_value = est.fields[fi];
                    est.argmax_pin_domain = pin.domain;
                    est.argmax_pin_values = pin.values;
                }
            });
            est.field_rho.push_back(field_best);
        }
    };
    evaluate(0);
    for (int round = 0; round < grid.refine_rounds; ++round) {
        const size_t first = est.fields.size();
        const FieldVector center = est.argmax_field >= 0 ? est.argmax_field_value
                                                         : FieldVector(n, 1.0);
        for (int i = 0; i < grid.random_points; ++i) {
            FieldVector phi(n);
            for (int v = 0; v < n; ++v) {
                const double jitter = 0.5 + unif(eng); // factor in [0.5, 1.5)
                phi[v] = std::min(1.0, std::max(1e-6, center[v] * jitter));
            }
            est.fields.push_back(phi);
        }
        evaluate(first);
    }
    return est;
}

DirectionVector good_direction(const TwoSpinSystem& sys) {
    DirectionVector chi(sys.graph.n, 1);
    if (sys.beta == 0) return chi; // gamma/0 = +inf: every comparison holds
    for (int v = 0; v < sys.graph.n; ++v) {
        const double threshold =
            0.5 * sys.graph.degrees[v] * (std::log(sys.gamma) - std::log(sys.beta));
        if (std::log(sys.fields[v]) > threshold) chi[v] = -1;
    }
    return chi;
}

} // namespace spinlab
