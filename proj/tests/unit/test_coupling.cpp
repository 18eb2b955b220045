#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "spinlab/coupling.hpp"
#include "spinlab/influence.hpp"
#include "spinlab/potential.hpp"
#include "spinlab/uniqueness.hpp"

using namespace spinlab;
using namespace testutil;

TEST_CASE("dobrushin influence") {
    SUBCASE("hardcore degree-1 vertex: R = 1/2") {
        const auto sys = TwoSpinSystem::hardcore(single_edge(), 1.0);
        CHECK(dobrushin_influence(sys, 0) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(dobrushin_row(sys, 1) == std::vector<double>{0.5});
    }
    SUBCASE("beta = gamma = 1: no interaction") {
        const TwoSpinSystem sys(path_graph(3), 1.0, 1.0, 0.7);
        for (int v = 0; v < 3; ++v) CHECK(dobrushin_influence(sys, v) <= 1e-14);
    }
    SUBCASE("lambda -> 0 freezes the vertex") {
        const auto sys = TwoSpinSystem::hardcore(single_edge(), 1e-9);
        CHECK(dobrushin_influence(sys, 0) < 1e-8);
    }
    SUBCASE("max over s equals the f_D rewrite") {
        for (const auto& sys : sample_systems()) {
            for (int u = 0; u < sys.graph.n; ++u) {
                const int deg = sys.graph.degrees[u];
                if (deg < 2) continue;
                double via_f = 0.0;
                for (int s = 0; s <= deg - 1; ++s)
                    via_f = std::max(via_f, claim_isfd_factor(sys, u, s) / deg);
                CHECK(dobrushin_influence(sys, u) == doctest::Approx(via_f).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("dobrushin row bounds the exact conditional TV over all boundaries") {
    // R(v,u) maximizes over the extended (possibly infeasible) boundaries, so
    // it must dominate every feasible adjacent-pair disagreement at u.
    for (const auto& sys : sample_systems()) {
        const int n = sys.graph.n;
        const auto table = enumerate_distribution(sys);
        for (int v = 0; v < n; ++v) {
            for (int u : sys.graph.adjacency[v]) {
                const double bound = dobrushin_influence(sys, u);
                for (int i = 0; i < table.size(); ++i) {
                    const uint32_t other = table.ranks[i] ^ state_bit(v, n);
                    const double tv = std::abs(conditional_plus(sys, table.ranks[i], u) -
                                               conditional_plus(sys, other, u));
                    CHECK(tv <= bound + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("claim factor specializations") {
    SUBCASE("beta=0, s >= 1: argument collapses to zero") {
        const auto sys = TwoSpinSystem::hardcore(path_graph(3), 1.0);
        CHECK(claim_isfd_factor(sys, 1, 1) == doctest::Approx(0.0));
    }
    SUBCASE("magnetized hardcore obeys f < 1 - delta/4") {
        const auto g = star_graph(3);
        const double delta = solved_gap(0, 1, 2.0, 3);
        REQUIRE(delta > 0);
        const double theta = delta * delta / 64.0;
        const auto sys = magnetize(TwoSpinSystem::hardcore(g, 2.0), theta);
        CHECK(claim_isfd_factor(sys, 0, 0) < 1 - delta / 4);
    }
    SUBCASE("Ising at the delta=1/2 boundary") {
        const double delta = 0.5;
        const double beta = (3 - 2 + delta) / (3 - delta); // 0.6, Delta=3 interval edge
        const auto g = complete_graph(4);                  // degree 3 vertices
        const double theta = delta * delta / 64.0;
        auto sys = magnetize(TwoSpinSystem::ising(g, beta, 1.0), theta);
        for (int s = 0; s <= 2; ++s)
            CHECK(claim_isfd_factor(sys, 0, s) < 1 - delta / 4);
    }
}

TEST_CASE("path coupling certificate") {
    SUBCASE("single isolated vertex: r = 1 by convention") {
        const auto sys = TwoSpinSystem::hardcore(empty_graph(1), 1.0);
        const auto cert = path_coupling_certificate(sys, WeightedHamming::unit_weights(1));
        CHECK(cert.r == doctest::Approx(1.0));
        CHECK(cert.pass);
    }
    SUBCASE("hardcore lambda <= 1/(2 Delta) with unit weights: r >= 1/(2n)") {
        for (const auto& g : {path_graph(4), cycle_graph(5), star_graph(4),
                              complete_graph(4)}) {
            const int n = g.n;
            const double lam = 1.0 / (2.0 * g.max_degree());
            const auto sys = TwoSpinSystem::hardcore(g, lam);
            const auto cert =
                path_coupling_certificate(sys, WeightedHamming::unit_weights(n));
            CHECK(cert.pass);
            CHECK(cert.r >= 1.0 / (2.0 * n) - 1e-12);
        }
    }
    SUBCASE("permutation equivariance") {
        // relabeling the path 0-1-2 as 2-1-0 leaves r unchanged
        const auto a = TwoSpinSystem::hardcore(path_graph(3), 0.4);
        const auto b = TwoSpinSystem::hardcore(Graph(3, {{1, 2}, {0, 1}}), 0.4);
        const auto ca = path_coupling_certificate(a, WeightedHamming::unit_weights(3));
        const auto cb = path_coupling_certificate(b, WeightedHamming::unit_weights(3));
        CHECK(ca.r == doctest::Approx(cb.r).epsilon(1e-14));
    }
    SUBCASE("certificate can fail") {
        const auto sys = TwoSpinSystem::hardcore(complete_graph(4), 2.0);
        const auto cert = path_coupling_certificate(sys, WeightedHamming::unit_weights(4));
        CHECK(!cert.pass);
    }
    SUBCASE("feasible-pairs variant is at least as good") {
        for (const auto& sys : sample_systems()) {
            const auto cert = path_coupling_certificate(
                sys, WeightedHamming::unit_weights(sys.graph.n));
            REQUIRE(cert.r_feasible.has_value());
            CHECK(*cert.r_feasible >= cert.r - 1e-12);
        }
    }
}

TEST_CASE("degree-weight certificate reaches delta/(8n) after magnetization") {
    for (const auto& g : {star_graph(3), complete_graph(4), cycle_graph(5)}) {
        if (g.max_degree() < 3) continue;
        const double lam = 1.0;
        const double delta = solved_gap(0.0, 1.0, lam, g.max_degree());
        if (delta <= 0) continue;
        const double theta = delta * delta / 64.0;
        const auto base = TwoSpinSystem::hardcore(g, lam);
        FieldVector dir(g.n);
        const auto chi = good_direction(base);
        for (int v = 0; v < g.n; ++v) dir[v] = chi[v] > 0 ? theta : 1.0 / theta;
        const auto sys = magnetize(base, dir);
        const auto cert =
            path_coupling_certificate(sys, WeightedHamming::degree_weights(g, delta));
        CHECK(cert.pass);
        CHECK(cert.r >= delta / (8.0 * g.n) - 1e-9);
    }
}

TEST_CASE("coupling gap bridge") {
    SUBCASE("edge hardcore lambda = 0.1") {
        const auto sys = TwoSpinSystem::hardcore(single_edge(), 0.1);
        const auto cert = path_coupling_certificate(sys, WeightedHamming::unit_weights(2));
        REQUIRE(cert.pass);
        const auto tm = glauber_matrix(enumerate_distribution(sys));
        CHECK(coupling_gap_bridge(cert, tm));
    }
    SUBCASE("failed certificate refuses a claim") {
        const auto sys = TwoSpinSystem::hardcore(complete_graph(4), 2.0);
        const auto cert = path_coupling_certificate(sys, WeightedHamming::unit_weights(4));
        REQUIRE(!cert.pass);
        const auto tm = glauber_matrix(enumerate_distribution(sys));
        CHECK_THROWS_AS(coupling_gap_bridge(cert, tm), std::domain_error);
    }
    SUBCASE("holds over connected graphs n <= 5 at lambda = 1/(2 Delta)") {
        for (int n = 2; n <= 5; ++n) {
            for (const auto& g : all_graphs(n, true)) {
                const auto sys = TwoSpinSystem::hardcore(g, 1.0 / (2.0 * g.max_degree()));
                const auto cert =
                    path_coupling_certificate(sys, WeightedHamming::unit_weights(n));
                if (!cert.pass) continue;
                const auto tm = glauber_matrix(enumerate_distribution(sys));
                CHECK(coupling_gap_bridge(cert, tm));
            }
        }
    }
}
