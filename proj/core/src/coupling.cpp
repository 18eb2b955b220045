#include "spinlab/coupling.hpp"

#include <cmath>
#include <stdexcept>

namespace spinlab {

WeightedHamming WeightedHamming::degree_weights(const Graph& g, double delta) {
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must lie in (0,1)");
    WeightedHamming w;
    w.weights.resize(g.n);
    for (int v = 0; v < g.n; ++v)
        w.weights[v] = g.degrees[v] <= 1 ? 1.0 - delta / 8.0
                                         : static_cast<double>(g.degrees[v]);
    return w;
}

WeightedHamming WeightedHamming::unit_weights(int n) {
    return {std::vector<double>(n, 1.0)};
}

namespace {
// x^e with the 0^0 = 1 convention
double pow0(double x, int e) { return e == 0 ? 1.0 : std::pow(x, e); }
} // namespace

double dobrushin_influence(const TwoSpinSystem& sys, int u) {
    const int deg = sys.graph.degrees[u];
    const double lu = sys.fields[u];
    auto p_plus = [&](int s) {
        const double a = lu * pow0(sys.beta, deg - s);
        return a / (pow0(sys.gamma, s) + a);
    };
    double best = 0.0;
    for (int s = 0; s + 1 <= deg; ++s)
        best = std::max(best, std::abs(p_plus(s + 1) - p_plus(s)));
    return best;
}

std::vector<double> dobrushin_row(const TwoSpinSystem& sys, int v) {
    if (v < 0 || v >= sys.graph.n) throw std::invalid_argument("vertex out of range");
    std::vector<double> row;
    row.reserve(sys.graph.adjacency[v].size());
    for (int u : sys.graph.adjacency[v]) row.push_back(dobrushin_influence(sys, u));
    return row;
}

double claim_isfd_factor(const TwoSpinSystem& sys, int u, int s) {
    const int deg = sys.graph.degrees[u];
    if (deg < 2) throw std::invalid_argument("claim factor needs Delta_u >= 2");
    if (s < 0 || s > deg - 1) throw std::invalid_argument("s out of range [0, Delta_u - 1]");
    const double x = sys.fields[u] * pow0(sys.beta * sys.gamma, s) /
                     pow0(sys.gamma, deg - 1);
    return deg * (1.0 - sys.beta * sys.gamma) * x /
           ((sys.beta * x + 1.0) * (x + sys.gamma));
}

CouplingCertificate path_coupling_certificate(const TwoSpinSystem& sys,
                                              const WeightedHamming& metric,
                                              bool with_feasible_variant) {
    const int n = sys.graph.n;
    if (static_cast<int>(metric.weights.size()) != n)
        throw std::invalid_argument("metric dimension mismatch");
    for (double w : metric.weights)
        if (!(w > 0)) throw std::invalid_argument("metric weights must be positive");
    CouplingCertificate cert;
    cert.expected_ratio.resize(n);
    if (n == 1) {
        // coupling coalesces in one step
        cert.r = 1.0;
        cert.pass = true;
        cert.worst_vertex = 0;
        cert.expected_ratio[0] = 0.0;
        return cert;
    }
    double worst = 0.0;
    for (int v = 0; v < n; ++v) {
        double neighbor_term = 0.0;
        for (int u : sys.graph.adjacency[v])
            neighbor_term += metric.weights[u] * dobrushin_influence(sys, u);
        const double expected =
            metric.weights[v] * (1.0 - 1.0 / n) + neighbor_term / n;
        cert.expected_ratio[v] = expected / metric.weights[v];
        if (cert.expected_ratio[v] > worst) {
            worst = cert.expected_ratio[v];
            cert.worst_vertex = v;
        }
    }
    cert.r = 1.0 - worst;
    cert.pass = cert.r > 0;

    if (with_feasible_variant && n <= kMatrixCapN) {
        // exact one-step expected distance over feasible adjacent pairs,
        // with the optimal per-site coupling (miscouple w.p. the conditional
        // TV at the updated vertex)
        const GibbsTable table = enumerate_distribution(sys);
        double worst_feasible = 0.0;
        bool any = false;
        for (int i = 0; i < table.size(); ++i) {
            for (int v = 0; v < n; ++v) {
                const uint32_t other = table.ranks[i] ^ state_bit(v, n);
                const int j = table.index_of(other);
                if (j < 0 || other < table.ranks[i]) continue; // each pair once
                any = true;
                double expected = metric.weights[v] * (n - 1.0) / n;
                for (int u : sys.graph.adjacency[v]) {
                    // conditional TV at u between the two boundaries
                    const double pu_x = conditional_plus(sys, table.ranks[i], u);
                    const double pu_y = conditional_plus(sys, other, u);
                    expected += metric.weights[u] * std::abs(pu_x - pu_y) / n;
                }
                worst_feasible = std::max(worst_feasible, expected / metric.weights[v]);
            }
        }
        if (any) cert.r_feasible = 1.0 - worst_feasible;
    }
    return cert;
}

bool coupling_gap_bridge(const CouplingCertificate& cert, const TransitionMatrix& tm) {
    if (!cert.pass) throw std::domain_error("certificate failed; no gap claim");
    const SpectralReport rep = spectral_report(tm); // throws if non-reversible
    const double lambda2 = tm.table.size() >= 2 ? rep.eigenvalues[1] : 0.0;
    return 1.0 - lambda2 >= cert.r - 1e-9;
}

} // namespace spinlab
