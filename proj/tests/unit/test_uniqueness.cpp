#include "doctest.h"

#include <cmath>
#include <random>

#include "spinlab/uniqueness.hpp"

using namespace spinlab;

TEST_CASE("fixed point golden values") {
    SUBCASE("hardcore lambda=4, d=2: x_hat = 1") {
        UniquenessQuery q{0.0, 1.0, 4.0, 0.1};
        const double x = fixed_point(q, 2);
        CHECK(x == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(tree_recursion(q, 2, x) - x) <= 1e-12 * std::max(1.0, x));
    }
    SUBCASE("hardcore lambda=1, d=1: golden ratio conjugate") {
        UniquenessQuery q{0.0, 1.0, 1.0, 0.1};
        CHECK(fixed_point(q, 1) == doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(1e-12));
    }
    SUBCASE("fixed-point residual is definitional") {
        std::mt19937_64 eng(2);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 200; ++trial) {
            UniquenessQuery q;
            q.gamma = 0.5 + 2.0 * u(eng);
            q.beta = u(eng) * std::min(q.gamma, 1.0 / q.gamma) * 0.99;
            q.lambda = 0.05 + 4.0 * u(eng);
            q.delta = 0.5;
            const int d = 1 + static_cast<int>(u(eng) * 6);
            const double x = fixed_point(q, d);
            CHECK(std::abs(tree_recursion(q, d, x) - x) <= 1e-12 * std::max(1.0, x));
        }
    }
}

TEST_CASE("decay at the fixed point") {
    SUBCASE("critical hardcore: f = 1") {
        UniquenessQuery q{0.0, 1.0, 4.0, 0.1};
        CHECK(decay_at_fixed_point(q, 2) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("hardcore lambda=1, d=2 is subcritical") {
        UniquenessQuery q{0.0, 1.0, 1.0, 0.1};
        CHECK(decay_at_fixed_point(q, 2) < 1.0);
    }
    SUBCASE("tiny lambda drives f to zero") {
        UniquenessQuery q{0.0, 1.0, 1e-9, 0.1};
        CHECK(decay_at_fixed_point(q, 1) < 1e-6);
    }
    SUBCASE("closed form matches a centered finite difference") {
        std::mt19937_64 eng(4);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            UniquenessQuery q;
            q.gamma = 0.5 + 2.0 * u(eng);
            q.beta = u(eng) * std::min(q.gamma, 1.0 / q.gamma) * 0.99;
            q.lambda = 0.05 + 4.0 * u(eng);
            q.delta = 0.5;
            const int d = 1 + static_cast<int>(u(eng) * 5);
            const double x = fixed_point(q, d);
            const double h = 1e-6 * std::max(1.0, x);
            const double fd = std::abs(tree_recursion(q, d, x + h) -
                                       tree_recursion(q, d, x - h)) / (2 * h);
            CHECK(decay_function(q, d, x) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("lambda_c") {
    CHECK(lambda_c(3) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(lambda_c(4) == doctest::Approx(1.6875).epsilon(1e-15));
    CHECK_THROWS(lambda_c(2));
    SUBCASE("critical fugacity makes f_{Delta-1} = 1") {
        for (int Delta : {3, 4, 5, 6}) {
            UniquenessQuery q{0.0, 1.0, lambda_c(Delta), 0.1};
            CHECK(decay_at_fixed_point(q, Delta - 1) == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("beta=0 closed-form threshold agrees with the fixed-point criterion") {
    std::mt19937_64 eng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double gamma = 0.5 + 1.5 * u(eng);
        const int d = 1 + static_cast<int>(u(eng) * 6);
        const double delta = 0.05 + 0.9 * u(eng);
        const double lam = 0.05 + 5.0 * u(eng);
        UniquenessQuery q{0.0, gamma, lam, delta};
        const bool by_fixed_point = decay_at_fixed_point(q, d) <= 1.0 - delta;
        const bool by_threshold = lam <= lambda_c_delta(gamma, d, delta) * (1 + 1e-12);
        if (std::abs(lam - lambda_c_delta(gamma, d, delta)) >
            1e-9 * std::max(1.0, lam)) // skip knife-edge draws
            CHECK(by_fixed_point == by_threshold);
    }
}

TEST_CASE("critical roots for beta > 0") {
    std::mt19937_64 eng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int applicable = 0;
    for (int trial = 0; trial < 400; ++trial) {
        UniquenessQuery q;
        q.gamma = 0.6 + 1.4 * u(eng);
        q.beta = (0.05 + 0.9 * u(eng)) * std::min(q.gamma, 1.0 / q.gamma);
        if (q.beta > q.gamma) continue;
        q.lambda = 0.1 + 4.0 * u(eng);
        q.delta = 0.05 + 0.6 * u(eng);
        const int d = 1 + static_cast<int>(u(eng) * 8);
        const auto roots = critical_roots(q, d);
        if (!roots) continue;
        ++applicable;
        // definitional: f_d(x_i) = 1 - delta
        CHECK(decay_function(q, d, roots->x1) == doctest::Approx(1 - q.delta).epsilon(1e-10));
        CHECK(decay_function(q, d, roots->x2) == doctest::Approx(1 - q.delta).epsilon(1e-10));
        // product identity lambda1 lambda2 = (gamma/beta)^{d+1}
        const double expect = std::pow(q.gamma / q.beta, d + 1);
        CHECK(roots->lambda1 * roots->lambda2 == doctest::Approx(expect).epsilon(1e-8));
        // ordering: lambda1 <= (gamma/beta)^{(d+1)/2} <= lambda2
        const double mid = std::pow(q.gamma / q.beta, (d + 1) / 2.0);
        CHECK(roots->lambda1 <= mid * (1 + 1e-9));
        CHECK(roots->lambda2 >= mid * (1 - 1e-9));
    }
    CHECK(applicable >= 100);
}

TEST_CASE("below the branch threshold, f stays under 1 - delta for all lambda") {
    UniquenessQuery q{0.3, 0.5, 1.0, 0.2}; // bar_Delta = (1+sqrt(.15))/(1-sqrt(.15)) ~ 2.27
    const int d = 1;
    REQUIRE(d < (1 - q.delta) * delta_bar(q));
    CHECK(!critical_roots(q, d));
    for (double lam = 1e-3; lam < 1e3; lam *= 1.8) {
        UniquenessQuery ql = q;
        ql.lambda = lam;
        const double x = fixed_point(ql, d);
        CHECK(decay_function(ql, d, x) < 1 - q.delta);
    }
}

TEST_CASE("uniqueness_check") {
    SUBCASE("hardcore Delta=3 at the critical fugacity fails") {
        UniquenessQuery q{0.0, 1.0, 4.0, 0.05};
        CHECK(!uniqueness_check_up_to(q, 3).pass);
    }
    SUBCASE("hardcore Delta=3, lambda=2 passes with its solved gap") {
        const double delta = solved_gap(0.0, 1.0, 2.0, 3);
        REQUIRE(delta > 0);
        UniquenessQuery q{0.0, 1.0, 2.0, delta * 0.999};
        const auto rep = uniqueness_check_up_to(q, 3);
        CHECK(rep.pass);
        // closed-form cross check at d = 2
        CHECK(2.0 <= lambda_c_delta(1.0, 2, q.delta) * (1 + 1e-9));
    }
    SUBCASE("Ising Delta=3 interval for delta = 1/2") {
        const double lo = (3 - 2 + 0.5) / (3 - 0.5);
        const double hi = (3 - 0.5) / (3 - 2 + 0.5);
        CHECK(lo == doctest::Approx(0.6));
        CHECK(hi == doctest::Approx(5.0 / 3).epsilon(1e-12));
        for (double beta : {0.65, 0.8, 0.95}) {
            UniquenessQuery q{beta, beta, 1.0, 0.5};
            const auto rep = uniqueness_check_up_to(q, 3);
            CHECK(rep.pass);
            CHECK(rep.root_criterion_agrees);
        }
        // outside the interval the gap-1/2 check fails
        UniquenessQuery q{0.5, 0.5, 1.0, 0.5};
        CHECK(!uniqueness_check_up_to(q, 3).pass);
    }
    SUBCASE("Delta = infinity early-exit certificate") {
        // symmetric Ising lambda=1: x_hat = 1 for every d, f_d = d(1-b^2)/(1+b)^2
        // grows linearly, so the loop terminates by failure...
        UniquenessQuery q{0.9, 0.9, 1.0, 0.01};
        const auto rep = uniqueness_check_up_to(q, std::nullopt);
        CHECK(!rep.pass);
        // ...while for beta > 0, gamma > 1 and small lambda the fixed point
        // collapses and f_d -> 0, so the plateau certificate fires
        UniquenessQuery gen{0.5, 1.5, 0.1, 0.3};
        const auto rep2 = uniqueness_check_up_to(gen, std::nullopt);
        CHECK(rep2.pass);
        CHECK(rep2.all_d_certificate);
    }
}

TEST_CASE("flip invariance of d-uniqueness along the good direction") {
    SUBCASE("hardcore: smaller lambda only helps") {
        const double delta = solved_gap(0.0, 1.0, 2.0, 3);
        UniquenessQuery q{0.0, 1.0, 2.0, delta * 0.999};
        CHECK(flip_invariance_check(q, 2, 3));
    }
    SUBCASE("Ising with lambda > 1 flips to the decreasing side") {
        UniquenessQuery q{0.8, 0.8, 1.5, 0.25};
        REQUIRE(decay_at_fixed_point(q, 2) <= 1 - q.delta);
        CHECK(flip_invariance_check(q, 2, 3));
    }
    SUBCASE("precondition enforced") {
        UniquenessQuery q{0.0, 1.0, 4.0, 0.5};
        CHECK_THROWS_AS(flip_invariance_check(q, 2, 3), std::domain_error);
    }
}
