#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "degfront/model.hpp"

using namespace degfront;

TEST_CASE("eval matches the closed forms") {
    Model m(1.5, 0.25);
    for (double u : {0.0, 0.3, 0.5, 0.9, 1.0}) {
        CHECK(eval(m, u, Which::Diffusion, 0) == doctest::Approx(1.5 * u + 0.25 * u * u));
        CHECK(eval(m, u, Which::Diffusion, 1) == doctest::Approx(1.5 + 0.5 * u));
        CHECK(eval(m, u, Which::Diffusion, 2) == doctest::Approx(0.5));
        CHECK(eval(m, u, Which::Reaction, 0) == doctest::Approx(u * (1.0 - u)));
        CHECK(eval(m, u, Which::Reaction, 1) == doctest::Approx(1.0 - 2.0 * u));
        CHECK(eval(m, u, Which::Reaction, 2) == doctest::Approx(-2.0));
    }
    CHECK_THROWS_AS(eval(m, 0.5, Which::Diffusion, 3), std::invalid_argument);
    CHECK_THROWS_AS(eval(m, 0.5, Which::Reaction, -1), std::invalid_argument);
}

TEST_CASE("cached scalars") {
    Model m(2.0, 0.5);
    CHECK(m.D1 == doctest::Approx(2.5));
    CHECK(m.Dp0 == doctest::Approx(2.0));
    CHECK(m.fp0 == doctest::Approx(1.0));
    CHECK(m.fp1 == doctest::Approx(-1.0));
    CHECK(m.fpp0 == doctest::Approx(-2.0));
}

TEST_CASE("hypotheses hold for admissible models") {
    for (auto [a, b] : {std::pair{1.0, 0.0}, {2.0, 0.0}, {1.0, 0.1}, {0.5, 2.0}}) {
        HypothesisReport r = check_hypotheses(Model(a, b));
        CHECK(r.passed);
        CHECK(r.violations.empty());
    }
}

TEST_CASE("hypothesis violations are detected with one worst offender each") {
    // D(u) = u^2 has D'(0) = 0 and is degenerate in the wrong way
    HypothesisReport r = check_hypotheses(Model(0.0, 1.0));
    CHECK_FALSE(r.passed);
    CHECK_FALSE(r.violations.empty());
    for (std::size_t i = 0; i < r.violations.size(); ++i)
        for (std::size_t j = i + 1; j < r.violations.size(); ++j)
            CHECK(r.violations[i].hypothesis != r.violations[j].hypothesis);

    // negative quadratic term makes D' < 0 near u = 1
    HypothesisReport r2 = check_hypotheses(Model(1.0, -0.8));
    CHECK_FALSE(r2.passed);
}

TEST_CASE("speed threshold") {
    Model a(1.0, 0.0);
    double cs = std::sqrt(0.5);
    // f'(0) sqrt(D(1))/sqrt(f'(0)-f'(1)) = 1/sqrt(2) ties with c*
    CHECK(speed_threshold(a, cs) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    Model b(1.0, 0.1);
    double csb = (1.0 + 0.1 / 5.0) / std::sqrt(2.0);
    CHECK(speed_threshold(b, csb) == doctest::Approx(std::sqrt(1.1 / 2.0)).epsilon(1e-9));
    CHECK(speed_threshold(b, csb) == doctest::Approx(0.74162).epsilon(1e-4));
}

TEST_CASE("known threshold speeds") {
    auto k1 = known_c_star(Model(1.0, 0.0));
    REQUIRE(k1.has_value());
    CHECK(k1->value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK_FALSE(k1->approximate);

    auto k2 = known_c_star(Model(2.0, 0.0));
    REQUIRE(k2.has_value());
    CHECK(k2->value == doctest::Approx(1.0).epsilon(1e-12));

    auto k3 = known_c_star(Model(1.0, 0.1));
    REQUIRE(k3.has_value());
    CHECK(k3->value == doctest::Approx(1.02 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(k3->approximate);

    CHECK_FALSE(known_c_star(Model(2.0, 0.5)).has_value());
}

TEST_CASE("json round trip") {
    Model m(1.25, 0.125);
    Model back = model_from_json(model_to_json(m));
    CHECK(back.alpha == 1.25);
    CHECK(back.beta == 0.125);
    CHECK(back.D1 == doctest::Approx(1.375));
}
