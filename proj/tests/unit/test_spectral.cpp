#include "doctest.h"

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "spinlab/spectral.hpp"

using namespace spinlab;
using namespace testutil;

namespace {
ObservableFunction random_observable(int m, std::mt19937_64& eng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ObservableFunction f(m);
    for (int i = 0; i < m; ++i) f(i) = g(eng);
    return f;
}
} // namespace

TEST_CASE("spectral report golden values") {
    SUBCASE("edge hardcore glauber: spectrum {1, 3/4, 1/4}, gap 1/4") {
        const auto table = enumerate_distribution(TwoSpinSystem::hardcore(single_edge(), 1.0));
        const auto rep = spectral_report(glauber_matrix(table));
        REQUIRE(rep.eigenvalues.size() == 3);
        CHECK(rep.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rep.eigenvalues[1] == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(rep.eigenvalues[2] == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(rep.gap == doctest::Approx(0.25).epsilon(1e-10));
    }
    SUBCASE("single free vertex: gap 1") {
        const auto table = enumerate_distribution(TwoSpinSystem::hardcore(empty_graph(1), 1.0));
        CHECK(spectral_report(glauber_matrix(table)).gap == doctest::Approx(1.0));
    }
    SUBCASE("trivial support: gap 1 by convention") {
        const auto table = enumerate_distribution(TwoSpinSystem::hardcore(single_edge(), 1.0));
        Pinning pin;
        pin.pin(0, +1, 2);
        pin.pin(1, -1, 2);
        const auto cond = conditional_table(table, pin);
        REQUIRE(cond.size() == 1);
        // glauber_matrix needs a free vertex; report directly on a 1x1 chain
        TransitionMatrix tm{cond, Eigen::MatrixXd::Ones(1, 1), "glauber"};
        const auto rep = spectral_report(tm);
        CHECK(rep.gap == 1.0);
        CHECK(rep.abs_gap == 1.0);
    }
}

TEST_CASE("detailed balance residual") {
    const auto table = enumerate_distribution(TwoSpinSystem::hardcore(path_graph(3), 0.8));
    auto tm = glauber_matrix(table);
    CHECK(detailed_balance_residual(tm) <= 1e-12);
    // negative control: corrupt one entry
    tm.P(0, 1) += 0.05;
    tm.P(0, 0) -= 0.05;
    CHECK(detailed_balance_residual(tm) > 1e-3);
    CHECK_THROWS_AS(spectral_report(tm), std::domain_error);
}

TEST_CASE("field dynamics is reversible on sampled systems") {
    for (const auto& sys : sample_systems()) {
        const auto table = enumerate_distribution(sys);
        for (double theta : {0.3, 0.7}) {
            const auto tm = field_matrix(table, theta);
            CHECK(detailed_balance_residual(tm) <= 1e-12);
            CHECK(stationarity_residual(tm) <= 1e-12);
        }
    }
}

TEST_CASE("chain functionals") {
    const auto table = enumerate_distribution(TwoSpinSystem::hardcore(single_edge(), 1.0));
    const auto tm = glauber_matrix(table);
    SUBCASE("constant observable has zero variance and energy") {
        const auto out = chain_functionals(tm, ObservableFunction::Ones(3));
        CHECK(out.variance == doctest::Approx(0.0));
        CHECK(out.dirichlet == doctest::Approx(0.0));
    }
    SUBCASE("indicator of (-,-): variance 2/9") {
        ObservableFunction f = ObservableFunction::Zero(3);
        f(0) = 1.0;
        const auto out = chain_functionals(tm, f);
        CHECK(out.variance == doctest::Approx(2.0 / 9).epsilon(1e-12));
        CHECK(out.formula_residual <= 1e-12);
    }
    SUBCASE("Poincare inequality on random observables") {
        std::mt19937_64 eng(5);
        for (const auto& sys : sample_systems()) {
            const auto t = enumerate_distribution(sys);
            const auto g = glauber_matrix(t);
            const double gap = spectral_report(g).gap;
            for (int trial = 0; trial < 100; ++trial) {
                const auto f = random_observable(t.size(), eng);
                const auto out = chain_functionals(g, f);
                CHECK(out.dirichlet >= gap * out.variance - 1e-9);
                CHECK(out.formula_residual <= 1e-10);
            }
        }
    }
}

TEST_CASE("min_gap on the single edge") {
    const auto table = enumerate_distribution(TwoSpinSystem::hardcore(single_edge(), 1.0));
    // unpinned gap 1/4; single-vertex pinnings give gap 1 or trivial support
    CHECK(min_gap(table) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("min_gap on a product distribution") {
    // independent fair spins: glauber gap is 1/n_free, minimized with no pinning
    const auto table = enumerate_distribution(TwoSpinSystem::hardcore(empty_graph(3), 1.0));
    CHECK(min_gap(table) == doctest::Approx(1.0 / 3).epsilon(1e-10));
}

TEST_CASE("tensorization constant") {
    SUBCASE("edge hardcore: C = 2") {
        const auto table = enumerate_distribution(TwoSpinSystem::hardcore(single_edge(), 1.0));
        CHECK(tensorization_constant(table) == doctest::Approx(2.0).epsilon(1e-10));
    }
    SUBCASE("product of fair spins: C = 1") {
        const auto table = enumerate_distribution(TwoSpinSystem::hardcore(empty_graph(2), 1.0));
        CHECK(tensorization_constant(table) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("variance tensorizes with the returned constant") {
        std::mt19937_64 eng(8);
        for (const auto& sys : sample_systems()) {
            const auto table = enumerate_distribution(sys);
            const double c = tensorization_constant(table);
            const auto tm = glauber_matrix(table);
            for (int trial = 0; trial < 100; ++trial) {
                const auto f = random_observable(table.size(), eng);
                const double var = chain_functionals(tm, f).variance;
                CHECK(var <= c * sum_vertex_variances(table, f) + 1e-9);
            }
        }
    }
}

TEST_CASE("mixing time bound") {
    SUBCASE("golden evaluation") {
        const auto table = enumerate_distribution(TwoSpinSystem::hardcore(single_edge(), 1.0));
        const auto out = mixing_time_bound(0.25, table, 1.0 / 8);
        CHECK(out.mu_min == doctest::Approx(1.0 / 3).epsilon(1e-12));
        CHECK(out.bound == doctest::Approx(4.0 * std::log(24.0)).epsilon(1e-10));
    }
    SUBCASE("boundary eps -> mu_min stays nonnegative") {
        const auto table = enumerate_distribution(TwoSpinSystem::hardcore(single_edge(), 1.0));
        const auto out = mixing_time_bound(0.25, table, 1.0 / 3);
        CHECK(out.bound >= 0.0);
    }
    SUBCASE("analytic marginal bound b^n lower-bounds mu_min") {
        for (const auto& sys : sample_systems()) {
            const auto table = enumerate_distribution(sys);
            const auto out = mixing_time_bound(0.5, table, 0.1, &sys);
            CHECK(out.b_lower > 0.0);
            CHECK(std::pow(out.b_lower, sys.graph.n) <= out.mu_min + 1e-12);
        }
    }
}

TEST_CASE("exact TV mixing beats the spectral bound") {
    for (const auto& sys : sample_systems()) {
        if (sys.graph.n > 4) continue;
        const auto table = enumerate_distribution(sys);
        const auto tm = glauber_matrix(table);
        const auto rep = spectral_report(tm);
        if (rep.abs_gap <= 0) continue;
        for (double eps : {0.1, 0.01}) {
            const auto bound = mixing_time_bound(rep.abs_gap, table, eps);
            const long t = exact_tv_mixing_time(tm, eps, static_cast<long>(bound.bound) + 2);
            REQUIRE(t >= 0);
            CHECK(static_cast<double>(t) <= bound.bound + 1e-9);
        }
    }
}

TEST_CASE("field dirichlet identity") {
    SUBCASE("constant observable gives zero on both sides") {
        const auto table = enumerate_distribution(TwoSpinSystem::hardcore(single_edge(), 1.0));
        const auto out = field_dirichlet_identity_check(table, 0.5, ObservableFunction::Ones(3));
        CHECK(out.lhs == doctest::Approx(0.0));
        CHECK(out.rhs == doctest::Approx(0.0));
    }
    SUBCASE("random observables on sampled systems") {
        std::mt19937_64 eng(13);
        for (const auto& sys : sample_systems()) {
            if (sys.graph.n > 4) continue;
            const auto table = enumerate_distribution(sys);
            for (double theta : {0.3, 0.7}) {
                for (int trial = 0; trial < 20; ++trial) {
                    const auto f = random_observable(table.size(), eng);
                    CHECK(field_dirichlet_identity_check(table, theta, f).residual <= 1e-10);
                }
            }
        }
    }
}
