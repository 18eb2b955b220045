#include "spinlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spinlab {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

std::string DynamicsSpec::label() const {
    std::ostringstream s;
    switch (kind) {
        case Kind::Glauber: s << "glauber"; break;
        case Kind::Block: s << "block(ell=" << ell << ")"; break;
        case Kind::Field:
            s << "field(theta=" << theta;
            if (inner_glauber_sweeps > 0) s << ",inner=" << inner_glauber_sweeps;
            s << ")";
            break;
        case Kind::ProjectedBlock:
            s << "projected(k=" << k << ",ell=" << ell << ")";
            break;
    }
    return s.str();
}

ChainSampler::ChainSampler(TwoSpinSystem sys, DynamicsSpec spec, Pinning pin)
    : sys_(std::move(sys)), spec_(spec), pin_(pin) {
    const int n = sys_.graph.n;
    for (int v = 0; v < n; ++v)
        if (!pin_.pins(v, n)) free_.push_back(v);
    const int f = static_cast<int>(free_.size());
    if (f == 0) throw std::invalid_argument("no free vertices");
    switch (spec_.kind) {
        case DynamicsSpec::Kind::Block:
            if (spec_.ell < 1 || spec_.ell > f)
                throw std::invalid_argument("block size out of range");
            break;
        case DynamicsSpec::Kind::Field:
            if (!(spec_.theta > 0 && spec_.theta < 1))
                throw std::invalid_argument("theta must lie in (0,1)");
            break;
        case DynamicsSpec::Kind::ProjectedBlock:
            if (spec_.k < 1) throw std::invalid_argument("k must be >= 1");
            if (spec_.ell < 1 || spec_.ell > spec_.k * f)
                throw std::invalid_argument("ell out of range [1, k*n]");
            break;
        default: break;
    }
    theta_log_scale_.assign(n, 0.0);
    if (spec_.kind == DynamicsSpec::Kind::Field)
        for (int v : free_) theta_log_scale_[v] = std::log(spec_.theta);
}

bool ChainSampler::feasible(const Configuration& sigma) const {
    if (static_cast<int>(sigma.size()) != sys_.graph.n) return false;
    const uint32_t r = rank_of(sigma);
    if (!pin_.agrees(r)) return false;
    return gibbs_log_weight(sys_, r) != kNegInf;
}

// Inverse-CDF draw from the exact conditional on `block` given the rest of
// sigma; assignments enumerated in canonical order (lex over the block with
// -1 < +1). `log_scale` holds per-vertex log field multipliers (0 = none).
void ChainSampler::resample_block(Configuration& sigma, const std::vector<int>& block,
                                  const std::vector<double>& log_scale, Rng& rng) const {
    const int b = static_cast<int>(block.size());
    if (b == 0) return;
    if (b > 24) throw std::invalid_argument("resample block too large");
    const uint32_t count = 1u << b;
    std::vector<double> lw(count);
    double max_lw = kNegInf;
    Configuration tau = sigma;
    for (uint32_t m = 0; m < count; ++m) {
        for (int i = 0; i < b; ++i)
            tau[block[i]] = (m & (1u << (b - 1 - i))) ? 1 : -1;
        lw[m] = gibbs_log_weight(sys_, rank_of(tau), log_scale.data());
        max_lw = std::max(max_lw, lw[m]);
    }
    double total = 0.0;
    for (uint32_t m = 0; m < count; ++m) {
        lw[m] = lw[m] == kNegInf ? 0.0 : std::exp(lw[m] - max_lw);
        total += lw[m];
    }
    const double target = rng.u01() * total;
    double acc = 0.0;
    uint32_t chosen = count - 1;
    for (uint32_t m = 0; m < count; ++m) {
        acc += lw[m];
        if (target < acc) {
            chosen = m;
            break;
        }
    }
    for (int i = 0; i < b; ++i)
        sigma[block[i]] = (chosen & (1u << (b - 1 - i))) ? 1 : -1;
}

void ChainSampler::glauber_step(Configuration& sigma, Rng& rng, int* resampled) const {
    const int v = free_[rng.pick(static_cast<int>(free_.size()))];
    std::vector<double> zeros(sys_.graph.n, 0.0);
    resample_block(sigma, {v}, zeros, rng);
    *resampled = 1;
}

void ChainSampler::block_step(Configuration& sigma, Rng& rng, int* resampled) const {
    // Uniform ell-subset via partial Fisher-Yates over the free list.
    std::vector<int> pool = free_;
    const int f = static_cast<int>(pool.size());
    for (int i = 0; i < spec_.ell; ++i) {
        const int j = i + rng.pick(f - i);
        std::swap(pool[i], pool[j]);
    }
    std::vector<int> block(pool.begin(), pool.begin() + spec_.ell);
    std::sort(block.begin(), block.end());
    std::vector<double> zeros(sys_.graph.n, 0.0);
    resample_block(sigma, block, zeros, rng);
    *resampled = spec_.ell;
}

void ChainSampler::field_step(Configuration& sigma, Rng& rng, int* resampled) const {
    std::vector<int> block;
    for (int v : free_) {
        if (sigma[v] == -1)
            block.push_back(v);
        else if (rng.bernoulli(spec_.theta))
            block.push_back(v);
    }
    *resampled = static_cast<int>(block.size());
    if (spec_.inner_glauber_sweeps <= 0) {
        resample_block(sigma, block, theta_log_scale_, rng);
        return;
    }
    // Optional approximate mode: simulate the conditional by an inner Glauber
    // chain for the magnetized system restricted to the block.
    const uint64_t sweeps = static_cast<uint64_t>(spec_.inner_glauber_sweeps);
    const int bsize = static_cast<int>(block.size());
    if (bsize == 0) return;
    std::vector<double> zeros(sys_.graph.n, 0.0);
    for (uint64_t t = 0; t < sweeps * static_cast<uint64_t>(bsize); ++t) {
        const int v = block[rng.pick(bsize)];
        Configuration tau = sigma;
        tau[v] = -1;
        const double lw_minus = gibbs_log_weight(sys_, rank_of(tau), theta_log_scale_.data());
        tau[v] = 1;
        const double lw_plus = gibbs_log_weight(sys_, rank_of(tau), theta_log_scale_.data());
        const double m = std::max(lw_minus, lw_plus);
        const double wm = lw_minus == kNegInf ? 0.0 : std::exp(lw_minus - m);
        const double wp = lw_plus == kNegInf ? 0.0 : std::exp(lw_plus - m);
        sigma[v] = rng.u01() * (wm + wp) < wm ? -1 : 1;
    }
}

void ChainSampler::projected_block_step(Configuration& sigma, Rng& rng, int* resampled) const {
    const int f = static_cast<int>(free_.size());
    HyperGeoParams hg{f, spec_.k, spec_.ell};
    const std::vector<int> a = hypergeo_sample(hg, rng);
    std::vector<int> block;
    std::vector<double> log_scale(sys_.graph.n, 0.0);
    for (int i = 0; i < f; ++i) {
        const int v = free_[i];
        const double b = static_cast<double>(a[i]) / spec_.k;
        const bool in_s = sigma[v] == -1 ? true : rng.bernoulli(b);
        if (in_s) {
            block.push_back(v);
            log_scale[v] = b > 0 ? std::log(b) : kNegInf;
        }
    }
    *resampled = static_cast<int>(block.size());
    resample_block(sigma, block, log_scale, rng);
}

int ChainSampler::step(ChainState& state, Rng& rng) const {
    int resampled = 0;
    switch (spec_.kind) {
        case DynamicsSpec::Kind::Glauber: glauber_step(state.config, rng, &resampled); break;
        case DynamicsSpec::Kind::Block: block_step(state.config, rng, &resampled); break;
        case DynamicsSpec::Kind::Field: field_step(state.config, rng, &resampled); break;
        case DynamicsSpec::Kind::ProjectedBlock:
            projected_block_step(state.config, rng, &resampled);
            break;
    }
    ++state.step;
    return resampled;
}

namespace {
Configuration one_step(const TwoSpinSystem& sys, const DynamicsSpec& spec,
                       const Configuration& sigma, Rng& rng, const Pinning& pin) {
    ChainSampler sampler(sys, spec, pin);
    if (!sampler.feasible(sigma)) throw std::domain_error("infeasible configuration");
    ChainState st{sigma, 0};
    sampler.step(st, rng);
    return st.config;
}
} // namespace

Configuration glauber_step(const TwoSpinSystem& sys, const Configuration& sigma,
                           Rng& rng, const Pinning& pin) {
    return one_step(sys, DynamicsSpec{DynamicsSpec::Kind::Glauber}, sigma, rng, pin);
}

Configuration block_step(const TwoSpinSystem& sys, const Configuration& sigma,
                         int ell, Rng& rng, const Pinning& pin) {
    DynamicsSpec spec{DynamicsSpec::Kind::Block};
    spec.ell = ell;
    return one_step(sys, spec, sigma, rng, pin);
}

Configuration field_step(const TwoSpinSystem& sys, const Configuration& sigma,
                         double theta, Rng& rng, const Pinning& pin) {
    DynamicsSpec spec{DynamicsSpec::Kind::Field};
    spec.theta = theta;
    return one_step(sys, spec, sigma, rng, pin);
}

Configuration projected_block_step(const TwoSpinSystem& sys, const Configuration& sigma,
                                   int k, int ell, Rng& rng, const Pinning& pin) {
    DynamicsSpec spec{DynamicsSpec::Kind::ProjectedBlock};
    spec.k = k;
    spec.ell = ell;
    return one_step(sys, spec, sigma, rng, pin);
}

Trajectory run_chain(const TwoSpinSystem& sys, const DynamicsSpec& spec,
                     const Configuration& start, uint64_t steps, uint64_t seed,
                     uint64_t thin, const Pinning& pin) {
    if (thin == 0) throw std::invalid_argument("thin must be >= 1");
    ChainSampler sampler(sys, spec, pin);
    if (!sampler.feasible(start)) throw std::domain_error("infeasible start configuration");
    Rng rng(seed);
    Trajectory traj;
    ChainState st{start, 0};
    traj.steps.push_back(0);
    traj.configs.push_back(st.config);
    for (uint64_t t = 1; t <= steps; ++t) {
        const Configuration before = st.config;
        const int resampled = sampler.step(st, rng);
        traj.records.push_back({t, resampled, before != st.config});
        if (t % thin == 0) {
            traj.steps.push_back(t);
            traj.configs.push_back(st.config);
        }
    }
    return traj;
}

GibbsTable empirical_distribution(const Trajectory& traj, int n) {
    std::vector<uint32_t> ranks;
    ranks.reserve(traj.configs.size());
    for (const auto& c : traj.configs) ranks.push_back(rank_of(c));
    std::sort(ranks.begin(), ranks.end());
    GibbsTable t;
    t.n = n;
    const double total = static_cast<double>(ranks.size());
    for (size_t i = 0; i < ranks.size();) {
        size_t j = i;
        while (j < ranks.size() && ranks[j] == ranks[i]) ++j;
        t.ranks.push_back(ranks[i]);
        t.probs.push_back((j - i) / total);
        i = j;
    }
    t.z = 1.0;
    t.log_z = 0.0;
    return t;
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) return kNegInf;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double hypergeo_pmf(const HyperGeoParams& p, const std::vector<int>& a) {
    if (static_cast<int>(a.size()) != p.n) throw std::invalid_argument("length mismatch");
    int sum = 0;
    double lw = -log_binomial(p.n * p.k, p.ell);
    for (int av : a) {
        if (av < 0 || av > p.k) return 0.0;
        sum += av;
        lw += log_binomial(p.k, av);
    }
    if (sum != p.ell) return 0.0;
    return std::exp(lw);
}

std::vector<int> hypergeo_sample(const HyperGeoParams& p, Rng& rng) {
    if (p.ell < 0 || p.ell > p.n * p.k)
        throw std::invalid_argument("ell out of range [0, k*n]");
    // Sequential conditionals: a_v ~ univariate hypergeometric given the
    // remaining draws and balls, inverse-CDF in increasing a_v.
    std::vector<int> a(p.n);
    int remaining_draws = p.ell;
    for (int v = 0; v < p.n; ++v) {
        const int rest = (p.n - 1 - v) * p.k;
        if (v == p.n - 1) {
            a[v] = remaining_draws;
            break;
        }
        const double log_denom = log_binomial(rest + p.k, remaining_draws);
        const double u = rng.u01();
        double acc = 0.0;
        int chosen = std::min(p.k, remaining_draws);
        for (int x = std::max(0, remaining_draws - rest);
             x <= std::min(p.k, remaining_draws); ++x) {
            acc += std::exp(log_binomial(p.k, x) +
                            log_binomial(rest, remaining_draws - x) - log_denom);
            if (u < acc) {
                chosen = x;
                break;
            }
        }
        a[v] = chosen;
        remaining_draws -= chosen;
    }
    return a;
}

namespace {
void hypergeo_enum(const HyperGeoParams& p, int v, int remaining, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
    if (v == p.n - 1) {
        if (remaining <= p.k) {
            cur[v] = remaining;
            out.push_back(cur);
        }
        return;
    }
    const int rest = (p.n - 1 - v) * p.k;
    for (int x = std::max(0, remaining - rest); x <= std::min(p.k, remaining); ++x) {
        cur[v] = x;
        hypergeo_enum(p, v + 1, remaining - x, cur, out);
    }
}
} // namespace

std::vector<std::vector<int>> hypergeo_support(const HyperGeoParams& p) {
    if (p.ell < 0 || p.ell > p.n * p.k)
        throw std::invalid_argument("ell out of range [0, k*n]");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(p.n);
    hypergeo_enum(p, 0, p.ell, cur, out);
    return out;
}

GibbsTable k_transform_table(const GibbsTable& table, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const int n = table.n;
    const int kn = n * k;
    if (kn > kTableCapN) throw std::invalid_argument("k-transform enumeration cap exceeded");
    if (table.pinned) throw std::invalid_argument("k-transform of a pinned table");
    std::vector<std::pair<uint32_t, double>> entries;
    for (int i = 0; i < table.size(); ++i) {
        const uint32_t base = table.ranks[i];
        std::vector<int> plus;
        for (int v = 0; v < n; ++v)
            if (base & state_bit(v, n)) plus.push_back(v);
        const int np = static_cast<int>(plus.size());
        double lifted_prob = table.probs[i];
        for (int j = 0; j < np; ++j) lifted_prob /= k;
        // mixed-radix loop over the i* choice for each +1 vertex
        std::vector<int> choice(np, 0);
        while (true) {
            uint32_t lifted = 0;
            for (int j = 0; j < np; ++j)
                lifted |= state_bit(lifted_vertex(plus[j], choice[j], k), kn);
            entries.emplace_back(lifted, lifted_prob);
            int pos = np - 1;
            while (pos >= 0 && ++choice[pos] == k) choice[pos--] = 0;
            if (pos < 0) break;
        }
    }
    std::sort(entries.begin(), entries.end());
    GibbsTable t;
    t.n = kn;
    t.z = table.z;
    t.log_z = table.log_z;
    for (auto& [r, p] : entries) {
        t.ranks.push_back(r);
        t.probs.push_back(p);
    }
    return t;
}

Configuration k_transform_sample(const GibbsTable& table, int k, Rng& rng) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    // draw X from the table, then lift: i* uniform per +1 vertex in order
    const double u = rng.u01();
    double acc = 0.0;
    int idx = table.size() - 1;
    for (int i = 0; i < table.size(); ++i) {
        acc += table.probs[i];
        if (u < acc) {
            idx = i;
            break;
        }
    }
    const uint32_t base = table.ranks[idx];
    const int n = table.n;
    Configuration lifted(n * k, -1);
    for (int v = 0; v < n; ++v)
        if (base & state_bit(v, n)) lifted[lifted_vertex(v, rng.pick(k), k)] = 1;
    return lifted;
}

Configuration project_config(const Configuration& lifted, int n, int k) {
    if (static_cast<int>(lifted.size()) != n * k)
        throw std::invalid_argument("lifted configuration length mismatch");
    Configuration sigma(n, -1);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < k; ++i)
            if (lifted[lifted_vertex(v, i, k)] == 1) sigma[v] = 1;
    return sigma;
}

uint32_t project_rank(uint32_t lifted_rank, int n, int k) {
    const int kn = n * k;
    uint32_t r = 0;
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < k; ++i)
            if (lifted_rank & state_bit(lifted_vertex(v, i, k), kn)) r |= state_bit(v, n);
    return r;
}

} // namespace spinlab
