#include "spinlab/transition.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace spinlab {

namespace {

void check_matrix_cap(const GibbsTable& table) {
    if (table.n > kMatrixCapN)
        throw std::invalid_argument("transition matrices capped at n <= 12");
}

// Heat-bath resampling of each subset in `subsets` with equal pick
// probability: P += (1/|subsets|) * conditional kernel.
void accumulate_heat_bath(const GibbsTable& table, const std::vector<uint32_t>& subsets,
                          Eigen::MatrixXd& P) {
    const int m = table.size();
    const double pick = 1.0 / static_cast<double>(subsets.size());
    std::unordered_map<uint32_t, std::pair<double, std::vector<int>>> groups;
    for (uint32_t s_mask : subsets) {
        groups.clear();
        for (int i = 0; i < m; ++i) {
            auto& g = groups[table.ranks[i] & ~s_mask];
            g.first += table.probs[i];
            g.second.push_back(i);
        }
        for (auto& [key, g] : groups) {
            for (int i : g.second)
                for (int j : g.second)
                    P(i, j) += pick * table.probs[j] / g.first;
        }
    }
}

std::vector<uint32_t> subsets_of_size(uint32_t pool, int ell) {
    std::vector<int> bits;
    for (int b = 0; b < 32; ++b)
        if (pool & (1u << b)) bits.push_back(b);
    const int f = static_cast<int>(bits.size());
    std::vector<uint32_t> out;
    std::vector<int> idx(ell);
    for (int i = 0; i < ell; ++i) idx[i] = i;
    while (true) {
        uint32_t mask = 0;
        for (int i : idx) mask |= 1u << bits[i];
        out.push_back(mask);
        int pos = ell - 1;
        while (pos >= 0 && idx[pos] == f - ell + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < ell; ++i) idx[i] = idx[i - 1] + 1;
    }
    return out;
}

} // namespace

TransitionMatrix glauber_matrix(const GibbsTable& table) {
    check_matrix_cap(table);
    const int m = table.size();
    TransitionMatrix tm{table, Eigen::MatrixXd::Zero(m, m), "glauber"};
    std::vector<uint32_t> singles;
    for (int v : table.free_vertices()) singles.push_back(state_bit(v, table.n));
    if (singles.empty()) throw std::invalid_argument("no free vertices");
    accumulate_heat_bath(table, singles, tm.P);
    return tm;
}

TransitionMatrix block_matrix(const GibbsTable& table, int ell) {
    check_matrix_cap(table);
    const int f = table.free_count();
    if (ell < 1 || ell > f) throw std::invalid_argument("block size out of range");
    const int m = table.size();
    TransitionMatrix tm{table, Eigen::MatrixXd::Zero(m, m), DynamicsSpec{DynamicsSpec::Kind::Block, ell}.label()};
    accumulate_heat_bath(table, subsets_of_size(table.free_mask(), ell), tm.P);
    return tm;
}

TransitionMatrix field_matrix(const GibbsTable& table, double theta) {
    check_matrix_cap(table);
    if (!(theta > 0 && theta < 1)) throw std::invalid_argument("theta must lie in (0,1)");
    const int m = table.size();
    const uint32_t free = table.free_mask();
    const GibbsTable pi = magnetize_table(table, theta);

    // pi_R(1_R) for every R subseteq free vertices
    const int f = table.free_count();
    std::vector<int> free_bits;
    for (int b = 0; b < 32; ++b)
        if (free & (1u << b)) free_bits.push_back(b);
    std::unordered_map<uint32_t, double> pi_r;
    pi_r.reserve(1u << f);
    for (uint32_t code = 0; code < (1u << f); ++code) {
        uint32_t r_mask = 0;
        for (int i = 0; i < f; ++i)
            if (code & (1u << i)) r_mask |= 1u << free_bits[i];
        double mass = 0.0;
        for (int j = 0; j < m; ++j)
            if ((pi.ranks[j] & r_mask) == r_mask) mass += pi.probs[j];
        pi_r[r_mask] = mass;
    }

    DynamicsSpec spec{DynamicsSpec::Kind::Field};
    spec.theta = theta;
    TransitionMatrix tm{table, Eigen::MatrixXd::Zero(m, m), spec.label()};
    for (int i = 0; i < m; ++i) {
        const uint32_t plus_i = table.ranks[i] & free;
        const int k_plus = std::popcount(plus_i);
        for (int j = 0; j < m; ++j) {
            const uint32_t common = plus_i & table.ranks[j] & free;
            double p = 0.0;
            // enumerate R subseteq common, including R = 0
            uint32_t r = common;
            while (true) {
                const int sz = std::popcount(r);
                p += std::pow(1.0 - theta, sz) * std::pow(theta, k_plus - sz) *
                     pi.probs[j] / pi_r.at(r);
                if (r == 0) break;
                r = (r - 1) & common;
            }
            tm.P(i, j) = p;
        }
    }
    return tm;
}

TransitionMatrix projected_block_matrix(const GibbsTable& table, int k, int ell) {
    check_matrix_cap(table);
    const int f = table.free_count();
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (ell < 1 || ell > k * f) throw std::invalid_argument("ell out of range [1, k*n]");
    const int m = table.size();
    const uint32_t free = table.free_mask();
    const std::vector<int> free_vs = table.free_vertices();

    DynamicsSpec spec{DynamicsSpec::Kind::ProjectedBlock};
    spec.k = k;
    spec.ell = ell;
    TransitionMatrix tm{table, Eigen::MatrixXd::Zero(m, m), spec.label()};

    HyperGeoParams hg{f, k, ell};
    const auto support = hypergeo_support(hg);
    std::vector<double> b(table.n, 0.0);
    std::vector<double> q(m);
    for (const auto& a : support) {
        const double pa = hypergeo_pmf(hg, a);
        for (int i = 0; i < f; ++i) b[free_vs[i]] = static_cast<double>(a[i]) / k;
        // every R subseteq free; q_{a,R}(Y) = [Y_R = 1_R] mu(Y) prod b / Z
        for (uint32_t code = 0; code < (1u << f); ++code) {
            uint32_t r_mask = 0;
            for (int i = 0; i < f; ++i)
                if (code & (1u << i)) r_mask |= state_bit(free_vs[i], table.n);
            double z = 0.0;
            for (int j = 0; j < m; ++j) {
                if ((table.ranks[j] & r_mask) != r_mask) {
                    q[j] = 0.0;
                    continue;
                }
                double w = table.probs[j];
                uint32_t extra = table.ranks[j] & free & ~r_mask;
                while (extra && w > 0) {
                    const int bit = std::countr_zero(extra);
                    extra &= extra - 1;
                    w *= b[table.n - 1 - bit];
                }
                q[j] = w;
                z += w;
            }
            if (z <= 0) continue;
            for (int i = 0; i < m; ++i) {
                if ((table.ranks[i] & r_mask) != r_mask) continue;
                // pre-factor: prod_{v in X+ \ R} b_v * prod_{v in R} (1 - b_v)
                double pre = pa;
                uint32_t sel = table.ranks[i] & free & ~r_mask;
                while (sel && pre > 0) {
                    const int bit = std::countr_zero(sel);
                    sel &= sel - 1;
                    pre *= b[table.n - 1 - bit];
                }
                uint32_t kept = r_mask;
                while (kept && pre > 0) {
                    const int bit = std::countr_zero(kept);
                    kept &= kept - 1;
                    pre *= 1.0 - b[table.n - 1 - bit];
                }
                if (pre <= 0) continue;
                for (int j = 0; j < m; ++j)
                    if (q[j] > 0) tm.P(i, j) += pre * q[j] / z;
            }
        }
    }
    return tm;
}

TransitionMatrix projected_block_matrix_by_pushforward(const GibbsTable& table,
                                                       int k, int ell) {
    const GibbsTable lifted = k_transform_table(table, k);
    if (lifted.n > kMatrixCapN)
        throw std::invalid_argument("k-transform exceeds matrix cap");
    const TransitionMatrix big = block_matrix(lifted, ell);
    const int m = table.size();
    const int M = lifted.size();
    std::vector<int> cls(M);
    for (int i = 0; i < M; ++i) {
        const int idx = table.index_of(project_rank(lifted.ranks[i], table.n, k));
        if (idx < 0) throw std::logic_error("projection left the base support");
        cls[i] = idx;
    }
    Eigen::MatrixXd P = Eigen::MatrixXd::Constant(m, m, -1.0);
    for (int i = 0; i < M; ++i) {
        Eigen::VectorXd row = Eigen::VectorXd::Zero(m);
        for (int j = 0; j < M; ++j) row(cls[j]) += big.P(i, j);
        if (P(cls[i], 0) < 0) {
            P.row(cls[i]) = row;
        } else if ((P.row(cls[i]).transpose() - row).cwiseAbs().maxCoeff() > 1e-12) {
            throw std::logic_error("pushforward rows disagree within a projection class");
        }
    }
    DynamicsSpec spec{DynamicsSpec::Kind::ProjectedBlock};
    spec.k = k;
    spec.ell = ell;
    return {table, P, spec.label() + "/pushforward"};
}

TransitionMatrix transition_matrix(const DynamicsSpec& spec, const GibbsTable& table) {
    switch (spec.kind) {
        case DynamicsSpec::Kind::Glauber: return glauber_matrix(table);
        case DynamicsSpec::Kind::Block: return block_matrix(table, spec.ell);
        case DynamicsSpec::Kind::Field: return field_matrix(table, spec.theta);
        case DynamicsSpec::Kind::ProjectedBlock:
            return projected_block_matrix(table, spec.k, spec.ell);
    }
    throw std::logic_error("unknown dynamics kind");
}

double max_entry_distance(const TransitionMatrix& a, const TransitionMatrix& b) {
    if (a.P.rows() != b.P.rows() || a.P.cols() != b.P.cols())
        throw std::invalid_argument("dimension mismatch");
    return (a.P - b.P).cwiseAbs().maxCoeff();
}

} // namespace spinlab
