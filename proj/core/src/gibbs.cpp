#include "spinlab/gibbs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace spinlab {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

uint32_t rank_of(const Configuration& sigma) {
    const int n = static_cast<int>(sigma.size());
    uint32_t r = 0;
    for (int v = 0; v < n; ++v) {
        if (sigma[v] != 1 && sigma[v] != -1)
            throw std::invalid_argument("spins must be -1 or +1");
        if (sigma[v] == 1) r |= state_bit(v, n);
    }
    return r;
}

Configuration config_of(uint32_t rank, int n) {
    Configuration sigma(n);
    for (int v = 0; v < n; ++v) sigma[v] = static_cast<int8_t>(spin_at(rank, v, n));
    return sigma;
}

std::string spin_string(const Configuration& sigma) {
    std::string s;
    s.reserve(sigma.size());
    for (int8_t x : sigma) s.push_back(x > 0 ? '+' : '-');
    return s;
}

Configuration parse_spin_string(const std::string& s) {
    Configuration sigma;
    sigma.reserve(s.size());
    for (char c : s) {
        if (c == '+')
            sigma.push_back(1);
        else if (c == '-')
            sigma.push_back(-1);
        else
            throw std::invalid_argument("spin string must consist of '+'/'-'");
    }
    return sigma;
}

TwoSpinSystem::TwoSpinSystem(Graph g, double beta_, double gamma_, double lambda)
    : TwoSpinSystem(std::move(g), beta_, gamma_, FieldVector{}) {
    fields.assign(graph.n, lambda);
    if (lambda <= 0) throw std::invalid_argument("lambda must be positive");
}

TwoSpinSystem::TwoSpinSystem(Graph g, double beta_, double gamma_, FieldVector lambdas)
    : graph(std::move(g)), beta(beta_), gamma(gamma_), fields(std::move(lambdas)) {
    if (!(beta >= 0 && beta <= gamma && gamma > 0))
        throw std::invalid_argument("need 0 <= beta <= gamma, gamma > 0");
    if (!fields.empty()) {
        if (static_cast<int>(fields.size()) != graph.n)
            throw std::invalid_argument("field vector length mismatch");
        for (double l : fields)
            if (!(l > 0)) throw std::invalid_argument("lambda_v must be positive");
    }
}

bool TwoSpinSystem::uniform_field() const {
    for (double l : fields)
        if (l != fields[0]) return false;
    return true;
}

double gibbs_log_weight(const TwoSpinSystem& sys, uint32_t rank,
                        const double* log_field_scale) {
    const int n = sys.graph.n;
    double lw = 0.0;
    const double log_beta = sys.beta > 0 ? std::log(sys.beta) : kNegInf;
    const double log_gamma = std::log(sys.gamma);
    for (auto [u, v] : sys.graph.edges) {
        const bool pu = rank & state_bit(u, n), pv = rank & state_bit(v, n);
        if (pu && pv) {
            if (sys.beta == 0) return kNegInf;
            lw += log_beta;
        } else if (!pu && !pv) {
            lw += log_gamma;
        }
    }
    for (int v = 0; v < n; ++v) {
        if (!(rank & state_bit(v, n))) continue;
        lw += std::log(sys.fields[v]);
        if (log_field_scale) {
            if (log_field_scale[v] == kNegInf) return kNegInf;
            lw += log_field_scale[v];
        }
    }
    return lw;
}

double gibbs_weight(const TwoSpinSystem& sys, const Configuration& sigma) {
    if (static_cast<int>(sigma.size()) != sys.graph.n)
        throw std::invalid_argument("configuration length mismatch");
    const double lw = gibbs_log_weight(sys, rank_of(sigma));
    return lw == kNegInf ? 0.0 : std::exp(lw);
}

TwoSpinSystem magnetize(const TwoSpinSystem& sys, const FieldVector& phi) {
    if (static_cast<int>(phi.size()) != sys.graph.n)
        throw std::invalid_argument("field vector length mismatch");
    FieldVector lambdas = sys.fields;
    for (int v = 0; v < sys.graph.n; ++v) {
        if (!(phi[v] > 0)) throw std::invalid_argument("local field must be positive");
        lambdas[v] *= phi[v];
    }
    return TwoSpinSystem(sys.graph, sys.beta, sys.gamma, std::move(lambdas));
}

TwoSpinSystem magnetize(const TwoSpinSystem& sys, double theta) {
    return magnetize(sys, FieldVector(sys.graph.n, theta));
}

double conditional_plus(const TwoSpinSystem& sys, uint32_t rank, int u) {
    const int n = sys.graph.n;
    int s_plus = 0, s_minus = 0;
    for (int w : sys.graph.adjacency[u])
        (rank & state_bit(w, n)) ? ++s_plus : ++s_minus;
    const double w_plus =
        s_plus == 0 ? sys.fields[u] : sys.fields[u] * std::pow(sys.beta, s_plus);
    const double w_minus = s_minus == 0 ? 1.0 : std::pow(sys.gamma, s_minus);
    return w_plus / (w_minus + w_plus);
}

int GibbsTable::free_count() const { return std::popcount(free_mask()); }

uint32_t GibbsTable::free_mask() const {
    const uint32_t all = n == 32 ? ~0u : ((1u << n) - 1);
    return all & ~pinned;
}

std::vector<int> GibbsTable::free_vertices() const {
    std::vector<int> vs;
    for (int v = 0; v < n; ++v)
        if (!(pinned & state_bit(v, n))) vs.push_back(v);
    return vs;
}

int GibbsTable::index_of(uint32_t rank) const {
    auto it = std::lower_bound(ranks.begin(), ranks.end(), rank);
    if (it == ranks.end() || *it != rank) return -1;
    return static_cast<int>(it - ranks.begin());
}

double GibbsTable::marginal_plus(int v) const {
    double p = 0.0;
    const uint32_t b = state_bit(v, n);
    for (int i = 0; i < size(); ++i)
        if (ranks[i] & b) p += probs[i];
    return p;
}

int GibbsTable::spin_support(int v) const {
    int s = 0;
    const uint32_t b = state_bit(v, n);
    for (uint32_t r : ranks) s |= (r & b) ? 2 : 1;
    return s;
}

double GibbsTable::min_prob() const {
    double m = 1.0;
    for (double p : probs) m = std::min(m, p);
    return m;
}

namespace {

GibbsTable normalize(int n, uint32_t pinned, std::vector<uint32_t> ranks,
                     std::vector<double> log_weights, double base_log_z) {
    if (ranks.empty()) throw std::domain_error("empty support");
    double max_lw = kNegInf;
    for (double lw : log_weights) max_lw = std::max(max_lw, lw);
    double total = 0.0;
    std::vector<double> w(log_weights.size());
    for (size_t i = 0; i < log_weights.size(); ++i) {
        w[i] = std::exp(log_weights[i] - max_lw);
        total += w[i];
    }
    GibbsTable t;
    t.n = n;
    t.pinned = pinned;
    t.ranks = std::move(ranks);
    t.probs.resize(w.size());
    for (size_t i = 0; i < w.size(); ++i) t.probs[i] = w[i] / total;
    t.log_z = base_log_z + max_lw + std::log(total);
    t.z = std::exp(t.log_z);
    return t;
}

} // namespace

GibbsTable enumerate_distribution(const TwoSpinSystem& sys) {
    const int n = sys.graph.n;
    if (n > kTableCapN)
        throw std::invalid_argument("exact enumeration capped at n <= 16");
    std::vector<uint32_t> ranks;
    std::vector<double> lws;
    for (uint32_t r = 0; r < (1u << n); ++r) {
        const double lw = gibbs_log_weight(sys, r);
        if (lw == kNegInf) continue;
        ranks.push_back(r);
        lws.push_back(lw);
    }
    // The all-(-1) state always has positive weight: gamma, lambda_v > 0.
    if (ranks.empty() || ranks[0] != 0)
        throw std::logic_error("all-(-1) state missing from support");
    return normalize(n, 0, std::move(ranks), std::move(lws), 0.0);
}

bool pinning_feasible(const GibbsTable& table, const Pinning& pin) {
    for (uint32_t r : table.ranks)
        if (pin.agrees(r)) return true;
    return false;
}

GibbsTable conditional_table(const GibbsTable& table, const Pinning& pin) {
    if (pin.empty()) return table;
    std::vector<uint32_t> ranks;
    std::vector<double> lws;
    for (int i = 0; i < table.size(); ++i)
        if (pin.agrees(table.ranks[i])) {
            ranks.push_back(table.ranks[i]);
            lws.push_back(std::log(table.probs[i]));
        }
    if (ranks.empty()) throw std::domain_error("infeasible pinning");
    return normalize(table.n, table.pinned | pin.domain, std::move(ranks),
                     std::move(lws), table.log_z);
}

GibbsTable magnetize_table(const GibbsTable& table, const FieldVector& phi) {
    if (static_cast<int>(phi.size()) != table.n)
        throw std::invalid_argument("field vector length mismatch");
    std::vector<double> log_phi(table.n);
    for (int v = 0; v < table.n; ++v) {
        if (!(phi[v] > 0)) throw std::invalid_argument("local field must be positive");
        log_phi[v] = std::log(phi[v]);
    }
    const uint32_t free = table.free_mask();
    std::vector<double> lws(table.size());
    for (int i = 0; i < table.size(); ++i) {
        double lw = std::log(table.probs[i]);
        uint32_t plus = table.ranks[i] & free;
        while (plus) {
            const int bit = std::countr_zero(plus);
            plus &= plus - 1;
            lw += log_phi[table.n - 1 - bit];
        }
        lws[i] = lw;
    }
    return normalize(table.n, table.pinned, table.ranks, std::move(lws), table.log_z);
}

GibbsTable magnetize_table(const GibbsTable& table, double theta) {
    return magnetize_table(table, FieldVector(table.n, theta));
}

GibbsTable flip_table(const GibbsTable& table, const DirectionVector& chi) {
    if (static_cast<int>(chi.size()) != table.n)
        throw std::invalid_argument("direction vector length mismatch");
    uint32_t flip_mask = 0;
    for (int v = 0; v < table.n; ++v) {
        if (chi[v] != 1 && chi[v] != -1)
            throw std::invalid_argument("direction entries must be -1 or +1");
        if (chi[v] == -1) flip_mask |= state_bit(v, table.n);
    }
    std::vector<std::pair<uint32_t, double>> entries(table.size());
    for (int i = 0; i < table.size(); ++i)
        entries[i] = {table.ranks[i] ^ flip_mask, table.probs[i]};
    std::sort(entries.begin(), entries.end());
    GibbsTable t;
    t.n = table.n;
    t.pinned = table.pinned;
    t.z = table.z;
    t.log_z = table.log_z;
    t.ranks.resize(entries.size());
    t.probs.resize(entries.size());
    for (size_t i = 0; i < entries.size(); ++i) {
        t.ranks[i] = entries[i].first;
        t.probs[i] = entries[i].second;
    }
    return t;
}

double tv_distance(const GibbsTable& a, const GibbsTable& b) {
    if (a.n != b.n) throw std::invalid_argument("dimension mismatch");
    double d = 0.0;
    size_t i = 0, j = 0;
    while (i < a.ranks.size() || j < b.ranks.size()) {
        if (j >= b.ranks.size() || (i < a.ranks.size() && a.ranks[i] < b.ranks[j]))
            d += a.probs[i++];
        else if (i >= a.ranks.size() || b.ranks[j] < a.ranks[i])
            d += b.probs[j++];
        else {
            d += std::abs(a.probs[i] - b.probs[j]);
            ++i, ++j;
        }
    }
    return d / 2.0;
}

} // namespace spinlab
