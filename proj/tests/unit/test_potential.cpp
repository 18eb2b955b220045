#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "spinlab/potential.hpp"
#include "spinlab/uniqueness.hpp"

using namespace spinlab;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("h at the extended-real endpoints") {
    CHECK(h_function(0.0, 1.0, -kInf) == 0.0);
    CHECK(h_function(0.3, 1.2, -kInf) == 0.0);
    CHECK(h_function(0.3, 1.2, kInf) == 0.0);  // exact zero, not an overflow artifact
    CHECK(h_function(0.0, 1.0, kInf) == -1.0); // beta = 0 saturates instead
    // huge finite arguments stay finite and overflow-free
    CHECK(std::abs(h_function(0.3, 1.2, 900.0)) < 1e-300);
    CHECK(std::abs(h_function(0.3, 1.2, -900.0)) < 1e-300);
    CHECK(h_function(0.0, 1.0, 900.0) == doctest::Approx(-1.0));
}

TEST_CASE("log recursion matches the ratio recursion and handles endpoints") {
    UniquenessQuery q{0.25, 1.3, 0.8, 0.1};
    const double x1 = 0.4, x2 = 2.7;
    const double via_ratio =
        q.lambda * (q.beta * x1 + 1) / (x1 + q.gamma) * (q.beta * x2 + 1) / (x2 + q.gamma);
    const double via_log = std::exp(
        log_tree_recursion(q.beta, q.gamma, q.lambda, {std::log(x1), std::log(x2)}));
    CHECK(via_log == doctest::Approx(via_ratio).epsilon(1e-12));
    // +inf child: factor beta; -inf child: factor 1/gamma
    CHECK(std::exp(log_tree_recursion(q.beta, q.gamma, q.lambda, {kInf})) ==
          doctest::Approx(q.lambda * q.beta).epsilon(1e-12));
    CHECK(std::exp(log_tree_recursion(q.beta, q.gamma, q.lambda, {-kInf})) ==
          doctest::Approx(q.lambda / q.gamma).epsilon(1e-12));
}

TEST_CASE("image intervals") {
    // hardcore: half line up to log(lambda/gamma^d)
    const auto j0 = image_interval(0.0, 1.0, 2.0, 3);
    CHECK(j0.lo == -kInf);
    CHECK(j0.hi == doctest::Approx(std::log(2.0)));
    // antiferro beta > 0: [log(lambda beta^d), log(lambda/gamma^d)]
    const auto j1 = image_interval(0.5, 1.5, 1.0, 2);
    CHECK(j1.lo == doctest::Approx(2 * std::log(0.5)));
    CHECK(j1.hi == doctest::Approx(-2 * std::log(1.5)));
    CHECK(j1.lo <= j1.hi);
}

TEST_CASE("default potential is sqrt(|h|)") {
    PotentialSpec spec;
    spec.beta = 0.2;
    spec.gamma = 1.1;
    for (double y : {-3.0, 0.0, 2.5}) {
        const double h = std::abs(h_function(0.2, 1.1, y));
        CHECK(spec.phi(y) == doctest::Approx(std::sqrt(h)));
        CHECK(spec.h_phi(y) == doctest::Approx(std::sqrt(h)));
    }
    CHECK(spec.h_phi(-kInf) == 0.0);
}

TEST_CASE("contraction certificate") {
    SUBCASE("near-critical hardcore: the symmetric max sits at the fixed point") {
        const double lam = lambda_c(3) * (1 - 1e-8);
        const double delta = solved_gap(0.0, 1.0, lam, 3);
        REQUIRE(delta > 0);
        UniquenessQuery q{0.0, 1.0, lam, delta * 0.9};
        const auto cert = contraction_certificate(q, 2);
        CHECK(cert.precondition_ok);
        CHECK(cert.sym_max == doctest::Approx(1.0).epsilon(1e-3)); // alpha(x_hat) = f_2(x_hat) -> 1
        CHECK(cert.pass); // <= sqrt(1 - delta) + 1e-9 for the solved gap
    }
    SUBCASE("hardcore lambda=2 passes with margin") {
        const double delta = solved_gap(0.0, 1.0, 2.0, 3);
        UniquenessQuery q{0.0, 1.0, 2.0, delta * 0.999};
        const auto cert = contraction_certificate(q, 2);
        CHECK(cert.pass);
        CHECK(cert.max_alpha < cert.bound - 1e-3);
        CHECK(cert.symmetrization_ok);
    }
    SUBCASE("precondition failure is reported, not asserted") {
        UniquenessQuery q{0.0, 1.0, 8.0, 0.3}; // far beyond lambda_c(3)
        const auto cert = contraction_certificate(q, 2);
        CHECK(!cert.precondition_ok);
        CHECK(!cert.pass);
    }
}

TEST_CASE("boundedness certificate") {
    SUBCASE("hardcore lambda=1 at d1=d2=2") {
        const double delta = solved_gap(0.0, 1.0, 1.0, 3);
        UniquenessQuery q{0.0, 1.0, 1.0, delta * 0.999};
        const auto cert = boundedness_certificate(q, 2, 2);
        CHECK(cert.pass);
        CHECK(cert.bound == doctest::Approx(12.0));
        CHECK(cert.c_hat == doctest::Approx(cert.max_product * 3.0));
    }
    SUBCASE("clamp maximization agrees with a dense grid") {
        std::mt19937_64 eng(17);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            const double gamma = 0.5 + 1.5 * u(eng);
            const double beta = u(eng) < 0.2 ? 0.0 : u(eng) * std::min(gamma, 0.999 / gamma);
            const double lam = 0.1 + 3.0 * u(eng);
            const int d = 1 + static_cast<int>(u(eng) * 4);
            const double exact = max_abs_h_on_image(beta, gamma, lam, d);
            const auto j = image_interval(beta, gamma, lam, d);
            const double lo = beta == 0 ? -40.0 : j.lo;
            double grid_max = 0.0;
            for (int i = 0; i <= 4000; ++i) {
                const double y = lo + (j.hi - lo) * i / 4000.0;
                grid_max = std::max(grid_max, std::abs(h_function(beta, gamma, y)));
            }
            CHECK(exact >= grid_max - 1e-9);
            CHECK(exact <= grid_max + 1e-4); // grid resolution slack
        }
    }
    SUBCASE("Ising in the Delta=3 interval has |h| <= (1-beta)/(1+beta) <= 2/Delta") {
        const double delta = 0.5;
        for (double beta : {0.6, 0.75, 0.95}) {
            REQUIRE(beta >= (3 - 2 + delta) / (3 - delta));
            // global max of |h| for beta = gamma sits at y = 0
            const double peak = std::abs(h_function(beta, beta, 0.0));
            CHECK(peak == doctest::Approx((1 - beta) / (1 + beta)).epsilon(1e-12));
            CHECK(peak <= 2.0 / 3 + 1e-12);
            // so the unit potential is (delta, 2)-bounded at Delta = 3
        }
    }
}

TEST_CASE("field envelope along the good direction") {
    // hardcore: smaller activity shrinks the image interval, so the envelope
    // inequality holds for lambda_v = lambda * theta
    const double delta = solved_gap(0.0, 1.0, 2.0, 4);
    UniquenessQuery q{0.0, 1.0, 2.0, std::max(0.05, delta * 0.999)};
    for (double theta : {0.1, 0.5, 0.9})
        CHECK(field_envelope_holds(q, q.lambda * theta, 3));
    // beta > 0, lambda above the midpoint: the flipped side divides by theta
    UniquenessQuery p{0.4, 1.1, 3.0, 0.1};
    const double mid = std::pow(p.gamma / p.beta, 3.0 / 2); // degree-3 vertex
    REQUIRE(p.lambda > 0);
    if (p.lambda > mid) {
        for (double theta : {0.2, 0.7})
            CHECK(field_envelope_holds(p, p.lambda / theta, 2));
    } else {
        for (double theta : {0.2, 0.7})
            CHECK(field_envelope_holds(p, p.lambda * theta, 2));
    }
}
