#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "spinlab/gibbs.hpp"
#include "spinlab/graphgen.hpp"
#include "spinlab/system.hpp"

namespace testutil {

using namespace spinlab;

// Independent oracle: direct-product weights, no log-space path.
inline double direct_weight(const TwoSpinSystem& sys, uint32_t rank) {
    const int n = sys.graph.n;
    double w = 1.0;
    for (auto [u, v] : sys.graph.edges) {
        const bool pu = rank & state_bit(u, n), pv = rank & state_bit(v, n);
        if (pu && pv)
            w *= sys.beta;
        else if (!pu && !pv)
            w *= sys.gamma;
    }
    for (int v = 0; v < n; ++v)
        if (rank & state_bit(v, n)) w *= sys.fields[v];
    return w;
}

struct DirectTable {
    std::vector<uint32_t> ranks;
    std::vector<double> probs;
    double z = 0.0;
};

inline DirectTable direct_enumerate(const TwoSpinSystem& sys) {
    DirectTable t;
    const int n = sys.graph.n;
    for (uint32_t r = 0; r < (1u << n); ++r) {
        const double w = direct_weight(sys, r);
        if (w <= 0) continue;
        t.ranks.push_back(r);
        t.probs.push_back(w);
        t.z += w;
    }
    for (auto& p : t.probs) p /= t.z;
    return t;
}

// A small pool of systems covering the hardcore/Ising/general antiferro cases.
inline std::vector<TwoSpinSystem> sample_systems() {
    std::vector<TwoSpinSystem> out;
    out.push_back(TwoSpinSystem::hardcore(single_edge(), 1.0));
    out.push_back(TwoSpinSystem::hardcore(path_graph(3), 0.7));
    out.push_back(TwoSpinSystem::hardcore(cycle_graph(4), 1.3));
    out.push_back(TwoSpinSystem::ising(path_graph(4), 0.4, 0.9));
    out.push_back(TwoSpinSystem::ising(complete_graph(3), 0.6, 1.0));
    out.push_back(TwoSpinSystem(star_graph(3), 0.2, 0.8, 1.1));
    out.push_back(TwoSpinSystem(cycle_graph(5), 0.5, 1.5, 0.8));
    return out;
}

inline FieldVector random_fields(int n, std::mt19937_64& eng, double lo = 0.05,
                                 double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    FieldVector phi(n);
    for (auto& x : phi) x = u(eng);
    return phi;
}

inline DirectionVector random_direction(int n, std::mt19937_64& eng) {
    DirectionVector chi(n);
    for (auto& x : chi) x = eng() & 1 ? 1 : -1;
    return chi;
}

} // namespace testutil
