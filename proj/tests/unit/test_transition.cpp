#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "spinlab/spectral.hpp"
#include "spinlab/transition.hpp"

using namespace spinlab;
using namespace testutil;

namespace {

// Test oracle for the hardcore field dynamics, following the independent-set
// description: keep each occupied vertex with probability 1-theta, force its
// neighborhood to -1, and resample the remaining induced subgraph at fugacity
// theta * lambda.
TransitionMatrix hardcore_field_oracle(const TwoSpinSystem& sys, double theta) {
    REQUIRE(sys.beta == 0.0);
    REQUIRE(sys.gamma == 1.0);
    const GibbsTable table = enumerate_distribution(sys);
    const int n = sys.graph.n;
    const int m = table.size();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        std::vector<int> occupied;
        for (int v = 0; v < n; ++v)
            if (table.ranks[i] & state_bit(v, n)) occupied.push_back(v);
        const int np = static_cast<int>(occupied.size());
        for (uint32_t sub = 0; sub < (1u << np); ++sub) {
            double pr = 1.0;
            uint32_t kept = 0;
            for (int b = 0; b < np; ++b) {
                if (sub & (1u << b)) {
                    pr *= 1.0 - theta;
                    kept |= state_bit(occupied[b], n);
                } else {
                    pr *= theta;
                }
            }
            uint32_t blocked = kept;
            for (int v = 0; v < n; ++v)
                if (kept & state_bit(v, n))
                    for (int w : sys.graph.adjacency[v]) blocked |= state_bit(w, n);
            // enumerate independent sets of the remaining graph at theta*lambda
            double z = 0.0;
            std::vector<std::pair<int, double>> weights;
            for (int j = 0; j < m; ++j) {
                const uint32_t r = table.ranks[j];
                if ((r & kept) != kept) continue;       // keeps stay occupied
                if (r & (blocked & ~kept)) continue;    // neighbors stay empty
                double w = 1.0;
                for (int v = 0; v < n; ++v)
                    if ((r & state_bit(v, n)) && !(kept & state_bit(v, n)))
                        w *= theta * sys.fields[v];
                weights.emplace_back(j, w);
                z += w;
            }
            for (auto [j, w] : weights) P(i, j) += pr * w / z;
        }
    }
    DynamicsSpec spec{DynamicsSpec::Kind::Field};
    spec.theta = theta;
    return {table, P, spec.label() + "/hardcore-oracle"};
}

} // namespace

TEST_CASE("glauber matrix on the edge hardcore model") {
    const auto table = enumerate_distribution(TwoSpinSystem::hardcore(single_edge(), 1.0));
    const auto tm = glauber_matrix(table);
    // states in canonical order: (-,-), (-,+), (+,-)
    Eigen::MatrixXd expect(3, 3);
    expect << 0.5, 0.25, 0.25,
              0.25, 0.75, 0.0,
              0.25, 0.0, 0.75;
    CHECK((tm.P - expect).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("rows are stochastic for every builder") {
    for (const auto& sys : sample_systems()) {
        const auto table = enumerate_distribution(sys);
        const int f = table.free_count();
        std::vector<TransitionMatrix> mats;
        mats.push_back(glauber_matrix(table));
        mats.push_back(block_matrix(table, std::min(2, f)));
        mats.push_back(field_matrix(table, 0.4));
        mats.push_back(projected_block_matrix(table, 2, std::min(3, 2 * f)));
        for (const auto& tm : mats) {
            for (int i = 0; i < tm.P.rows(); ++i)
                CHECK(std::abs(tm.P.row(i).sum() - 1.0) <= 1e-12);
            CHECK(tm.P.minCoeff() >= 0.0);
            CHECK(stationarity_residual(tm) <= 1e-12);
        }
    }
}

TEST_CASE("trivial support gives the 1x1 identity chain") {
    const auto table = enumerate_distribution(TwoSpinSystem::hardcore(single_edge(), 1.0));
    Pinning pin;
    pin.pin(0, +1, 2); // v is forced to -1: |Omega| = 1 with one free vertex
    const auto cond = conditional_table(table, pin);
    REQUIRE(cond.size() == 1);
    const auto tm = glauber_matrix(cond);
    REQUIRE(tm.P.rows() == 1);
    CHECK(tm.P(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("block with ell=1 equals glauber entrywise") {
    for (const auto& sys : sample_systems()) {
        const auto table = enumerate_distribution(sys);
        CHECK(max_entry_distance(glauber_matrix(table), block_matrix(table, 1)) <= 1e-14);
    }
}

TEST_CASE("block with ell=n is the full resample") {
    const auto table = enumerate_distribution(TwoSpinSystem::hardcore(single_edge(), 1.0));
    const auto tm = block_matrix(table, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(tm.P(i, j) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    const auto rep = spectral_report(tm);
    CHECK(rep.gap == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("field matrix golden entry and positivity") {
    const auto table = enumerate_distribution(TwoSpinSystem::hardcore(single_edge(), 1.0));
    const auto tm = field_matrix(table, 0.5);
    CHECK(tm.P(0, 0) == doctest::Approx(0.5).epsilon(1e-14)); // (-,-) -> (-,-) = pi(--)
    // irreducible and aperiodic: strictly positive between feasible states
    CHECK(tm.P.minCoeff() > 0.0);
}

TEST_CASE("field matrix equals the hardcore specialization oracle") {
    std::vector<TwoSpinSystem> cases;
    cases.push_back(TwoSpinSystem::hardcore(single_edge(), 1.0));
    cases.push_back(TwoSpinSystem::hardcore(path_graph(3), 0.7));
    cases.push_back(TwoSpinSystem::hardcore(star_graph(3), 1.2));
    cases.push_back(TwoSpinSystem::hardcore(cycle_graph(4), 0.9));
    for (const auto& sys : cases) {
        const auto table = enumerate_distribution(sys);
        for (double theta : {0.3, 0.5, 0.8}) {
            const auto direct = field_matrix(table, theta);
            const auto oracle = hardcore_field_oracle(sys, theta);
            CHECK(max_entry_distance(direct, oracle) <= 1e-12);
        }
    }
}

TEST_CASE("projected block dynamics") {
    SUBCASE("k=1, ell=n equals the full block resample") {
        for (const auto& sys : {TwoSpinSystem::hardcore(single_edge(), 1.0),
                                TwoSpinSystem::hardcore(path_graph(3), 0.8),
                                TwoSpinSystem::ising(path_graph(3), 0.5, 1.0)}) {
            const auto table = enumerate_distribution(sys);
            const int n = sys.graph.n;
            CHECK(max_entry_distance(projected_block_matrix(table, 1, n),
                                     block_matrix(table, n)) <= 1e-12);
        }
    }
    SUBCASE("matrix equals the pushforward of the lifted block dynamics") {
        for (const auto& sys : {TwoSpinSystem::hardcore(single_edge(), 1.0),
                                TwoSpinSystem::ising(single_edge(), 0.5, 0.9),
                                TwoSpinSystem::hardcore(path_graph(3), 1.1)}) {
            const auto table = enumerate_distribution(sys);
            const int n = sys.graph.n;
            for (int k : {1, 2, 3}) {
                if (n * k > 9) continue;
                for (int ell : {1, k, k * n - 1}) {
                    if (ell < 1 || ell > k * n) continue;
                    const auto direct = projected_block_matrix(table, k, ell);
                    const auto pushed = projected_block_matrix_by_pushforward(table, k, ell);
                    CHECK(max_entry_distance(direct, pushed) <= 1e-12);
                }
            }
        }
    }
    SUBCASE("single vertex, k=2, ell=1: resample at field lambda/2") {
        const auto table = enumerate_distribution(TwoSpinSystem::hardcore(empty_graph(1), 1.0));
        const auto tm = projected_block_matrix(table, 2, 1);
        // From -1: S = {v} always, a_v = 1, field 1/2: P(-1 -> +1) = (1/2)/(1 + 1/2)
        CHECK(tm.P(0, 1) == doctest::Approx((0.5) / 1.5).epsilon(1e-12));
    }
    SUBCASE("stationarity mu M = mu") {
        for (const auto& sys : sample_systems()) {
            if (sys.graph.n > 4) continue;
            const auto table = enumerate_distribution(sys);
            const auto tm = projected_block_matrix(table, 2, 3);
            CHECK(stationarity_residual(tm) <= 1e-12);
            CHECK(detailed_balance_residual(tm) <= 1e-12);
        }
    }
}

TEST_CASE("projected block converges entrywise to the field dynamics") {
    const auto table = enumerate_distribution(TwoSpinSystem::hardcore(single_edge(), 1.0));
    const double theta = 0.5;
    const auto fd = field_matrix(table, theta);
    const int n = 2;
    auto dist = [&](int k) {
        const int ell = static_cast<int>(std::ceil(theta * k * n));
        return max_entry_distance(projected_block_matrix(table, k, ell), fd);
    };
    CHECK(dist(64) < dist(2));
}
