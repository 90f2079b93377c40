#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "degfront/profile.hpp"

using namespace degfront;

namespace {
const Model& model_a() {
    static Model m(1.0, 0.0);
    return m;
}

FrontProfile make(double h, double X = 40.0) {
    static Orbit orbit = shoot_orbit(model_a(), 1.0);
    GridSpec g;
    g.h = h;
    g.Xm = X;
    g.Xp = X;
    return reconstruct_profile(orbit, model_a(), 1.0, g);
}

double residual_sup(const FrontProfile& p) {
    double sup = 0.0;
    for (double r : profile_residual(p, model_a())) sup = std::max(sup, std::abs(r));
    return sup;
}
} // namespace

TEST_CASE("linearization at (1,0)") {
    auto [eta, vec] = linearization_at_one(model_a(), 1.0);
    CHECK(eta == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-12));
    CHECK(vec[0] == doctest::Approx(1.0));
    CHECK(vec[1] == doctest::Approx(eta));
    CHECK_THROWS_AS(linearization_at_one(model_a(), -1.0), std::invalid_argument);
}

TEST_CASE("center manifold coefficients") {
    auto [h1, h2] = center_manifold_coeffs(model_a(), 1.0);
    CHECK(h1 == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(h2 == doctest::Approx(-1.0).epsilon(1e-12));

    auto [g1, g2] = center_manifold_coeffs(model_a(), 2.0);
    CHECK(g1 == doctest::Approx(-0.5).epsilon(1e-12));
    // -(f''(0)c^2 + 4 D'(0) f'(0)^2)/(2 c^3) = -(-8 + 4)/16
    CHECK(g2 == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("orbit classification across the threshold") {
    CHECK(shoot_orbit(model_a(), 1.0).classification == OrbitClass::Smooth);
    CHECK(shoot_orbit(model_a(), 0.9).classification == OrbitClass::Smooth);
    CHECK(shoot_orbit(model_a(), 0.5).classification != OrbitClass::Smooth);
    CHECK(shoot_orbit(model_a(), 0.2).classification != OrbitClass::Smooth);
}

TEST_CASE("smooth orbit reaches phi_stop with the physical coordinate attached") {
    Orbit o = shoot_orbit(model_a(), 1.0);
    CHECK(o.states.back()[0] <= 1.1e-9);
    CHECK(o.xi.back() > o.xi.front());
    // phi strictly decreasing along the orbit tail
    CHECK(o.states.back()[0] < o.states.front()[0]);
}

TEST_CASE("threshold speed recovery") {
    double est = estimate_c_star(model_a(), {0.1, 2.0}, 1e-3);
    CHECK(est == doctest::Approx(std::sqrt(0.5)).epsilon(5e-3));
    CHECK_THROWS_AS(estimate_c_star(model_a(), {1.0, 2.0}, 1e-3), std::invalid_argument);
}

TEST_CASE("profile reconstruction: shape and anchor") {
    FrontProfile p = make(0.01);
    CHECK(p.phi.size() == 8001);
    CHECK(p.phi.front() > 0.999999);
    CHECK(p.phi.back() < 1e-8);
    for (std::size_t i = 0; i < p.phi.size(); ++i) CHECK(p.phix[i] < 0.0);
    CHECK(p.phi[p.anchor_index] == doctest::Approx(0.5).epsilon(2e-2));
    CHECK(p.rate_minus == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-10));
    CHECK(p.rate_plus == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("profile residual and its h-refinement") {
    double r2 = residual_sup(make(0.02));
    double r1 = residual_sup(make(0.01));
    CHECK(r1 < 2e-5); // second-order floor of the central stencil
    double ratio = r2 / r1;
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("auto grid satisfies the truncation rule") {
    GridSpec g = GridSpec::auto_spec(model_a(), 1.0, 0.01);
    // tails below 1e-10 need >= 10/rate e-foldings of ln 10
    CHECK(g.Xp >= 10.0 * std::log(10.0) - 1e-9);
    CHECK(g.Xm >= 10.0 * std::log(10.0) / ((std::sqrt(5.0) - 1.0) / 2.0) - 1e-9);
}

TEST_CASE("phixx switches to the tail ansatz where D degenerates") {
    FrontProfile p = make(0.02);
    // interior point: profile ODE form
    std::size_t mid = p.anchor_index;
    double lhs = profile_phixx(p, p.c > 0 ? model_a() : model_a(), mid);
    double phi = p.phi[mid], v = p.phix[mid];
    CHECK(lhs == doctest::Approx((-v - phi * (1 - phi) - v * v) / phi).epsilon(1e-12));
    // far right: ansatz value rate^2 * phi
    std::size_t last = p.phi.size() - 1;
    CHECK(profile_phixx(p, model_a(), last) == doctest::Approx(p.phi[last]).epsilon(1e-12));
}
