#include "doctest.h"

#include <algorithm>

#include "spinlab/verify.hpp"

using namespace spinlab;

TEST_CASE("verify registry") {
    const auto suites = verify::suite_names();
    CHECK(std::find(suites.begin(), suites.end(), "all") != suites.end());
    CHECK(std::find(suites.begin(), suites.end(), "exact") != suites.end());
    CHECK(verify::checks_in_suite("all").size() >= 14);
    CHECK_THROWS(verify::checks_in_suite("nope"));
    CHECK_THROWS(verify::run_check("nope", {}));
}

TEST_CASE("quick suites pass") {
    verify::Options opt;
    opt.quick = true;
    opt.nmax = 3;
    for (const std::string suite : {"core", "dynamics"}) {
        for (const auto& res : verify::run_suite(suite, opt)) {
            CHECK_MESSAGE(res.pass, res.name, " worst=", res.worst);
            CHECK(res.suite == suite);
        }
    }
}

TEST_CASE("antiferro grid points are valid") {
    const auto grid = verify::antiferro_grid();
    CHECK(grid.size() >= 12);
    for (const auto& p : grid) {
        CHECK(p[0] >= 0);
        CHECK(p[0] <= p[1]);
        CHECK(p[1] > 0);
        CHECK(p[2] > 0);
        CHECK(p[0] * p[1] < 1);
    }
}

TEST_CASE("fault injection trips the golden check") {
    verify::Options opt;
    opt.quick = true;
    opt.inject_fault = true;
    const auto res = verify::run_check("golden-values", opt);
    CHECK(!res.pass);
}
