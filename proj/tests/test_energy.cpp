#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "degfront/energy.hpp"

using namespace degfront;

namespace {
const Model& model_a() {
    static Model m(1.0, 0.0);
    return m;
}

const FrontProfile& profile() {
    static FrontProfile p = [] {
        Orbit o = shoot_orbit(model_a(), 1.0);
        GridSpec g;
        g.h = 0.01;
        g.Xm = 40.0;
        g.Xp = 40.0;
        return reconstruct_profile(o, model_a(), 1.0, g);
    }();
    return p;
}

std::vector<cplx> phix_complex() {
    const FrontProfile& p = profile();
    return std::vector<cplx>(p.phix.begin(), p.phix.end());
}
} // namespace

TEST_CASE("theta: anchor zero, monotone decrease, doubly exponential right tail") {
    const FrontProfile& p = profile();
    std::vector<double> th = theta(p, model_a(), p.x0_anchor);
    CHECK(th[p.anchor_index] == 0.0);
    for (std::size_t i = 0; i + 1 < th.size(); ++i) CHECK(th[i + 1] < th[i]);
    CHECK(th.front() > 0.0);
    // theta ~ -(1/2D'(0)) e^{f'(0)x/c}: one unit to the right multiplies by e
    auto at = [&](double x) {
        return th[static_cast<std::size_t>(std::lround((x + p.Xm) / p.h))];
    };
    CHECK(at(8.0) / at(7.0) == doctest::Approx(std::exp(1.0)).epsilon(0.05));
    CHECK(at(7.0) / at(6.0) == doctest::Approx(std::exp(1.0)).epsilon(0.1));
    CHECK_THROWS_AS(theta(p, model_a(), 100.0), std::invalid_argument);
}

TEST_CASE("theta is flat near the left end (D -> D(1))") {
    const FrontProfile& p = profile();
    std::vector<double> th = theta(p, model_a(), p.x0_anchor);
    double slope = (th[1] - th[0]) / p.h;
    CHECK(slope == doctest::Approx(-0.5).epsilon(1e-6)); // -c/(2 D(1))
}

TEST_CASE("H limits") {
    const FrontProfile& p = profile();
    std::vector<double> H = compute_H(p, model_a());
    CHECK(H.front() == doctest::Approx(-1.25).epsilon(1e-4)); // -c^2/4D(1) + f'(1)
    CHECK(H.back() < -1e6);                                   // -c^2/4D(phi) blow-up
    // monotone blow-up on the far right tail
    CHECK(H[H.size() - 1] < H[H.size() - 100]);
}

TEST_CASE("energy identity: translation kernel pair") {
    const FrontProfile& p = profile();
    double L = p.Xm + p.Xp;
    EnergyReport rep = energy_identity(phix_complex(), {0.0, 0.0}, p, model_a(),
                                       -p.Xm + 0.2 * L, p.Xp - 0.2 * L);
    CHECK(rep.relative_residual <= 1e-6);
    CHECK(rep.rhs <= 0.0);
    CHECK(std::abs(rep.lhs) == 0.0); // lambda = 0 kills the lhs exactly
    CHECK(rep.window_shrunk);                         // right edge hits |theta| = 300
}

TEST_CASE("energy identity: (w/psi)_x = 0 branch") {
    const FrontProfile& p = profile();
    std::vector<cplx> u = phix_complex();
    // power-of-two multiple keeps w/psi exactly constant in floating point;
    // an inexact multiple leaves ulp-level noise in the ratio that the
    // double-exponential weight then amplifies
    for (cplx& z : u) z *= 2.0;
    EnergyReport rep = energy_identity(u, {0.0, 0.0}, p, model_a(), -10.0, 5.0);
    CHECK(rep.rhs == 0.0);
    CHECK(rep.relative_residual <= 1e-12);
}

TEST_CASE("energy identity: manufactured interior solution at lambda = -0.5") {
    const FrontProfile& p = profile();
    std::vector<cplx> u = manufacture_solution(p, model_a(), -0.5, -12.0, 6.0);
    EnergyReport rep = energy_identity(u, {-0.5, 0.0}, p, model_a(), -12.0, 6.0);
    CHECK(rep.relative_residual <= 1e-8);
    CHECK(rep.rhs <= 0.0);
    CHECK(std::abs(rep.lhs) > 0.0);
}

TEST_CASE("energy identity is insensitive to the window placement") {
    const FrontProfile& p = profile();
    for (auto [l, r] : {std::pair{-20.0, 4.0}, {-8.0, 5.0}, {-15.0, 0.0}}) {
        EnergyReport rep = energy_identity(phix_complex(), {0.0, 0.0}, p, model_a(), l, r);
        CHECK(rep.relative_residual <= 1e-6);
    }
}

TEST_CASE("window validation and overflow guard") {
    const FrontProfile& p = profile();
    CHECK_THROWS_AS(energy_identity(phix_complex(), {0.0, 0.0}, p, model_a(), 5.0, -5.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(energy_identity(phix_complex(), {0.0, 0.0}, p, model_a(), 90.0, 95.0),
                    std::invalid_argument);
    // a window deep inside the overflow region collapses to nothing
    CHECK_THROWS_AS(energy_identity(phix_complex(), {0.0, 0.0}, p, model_a(), 20.0, 39.0),
                    std::runtime_error);
    EnergyReport rep =
        energy_identity(phix_complex(), {0.0, 0.0}, p, model_a(), -p.Xm, p.Xp);
    CHECK(rep.window_shrunk);
    CHECK(rep.window_r < p.Xp);
}

TEST_CASE("interior eigen-sized input is zero-padded") {
    const FrontProfile& p = profile();
    std::vector<cplx> u(p.phix.begin() + 1, p.phix.end() - 1);
    EnergyReport rep = energy_identity(u, {0.0, 0.0}, p, model_a(), -10.0, 5.0);
    CHECK(rep.relative_residual <= 1e-6);
}

TEST_CASE("kernel simplicity") {
    const FrontProfile& p = profile();
    std::vector<double> u0(p.phix.begin(), p.phix.end());
    CHECK(kernel_simplicity(u0, p, model_a()) <= 1e-10);

    // perturb with a localized bump: the ratio is no longer constant
    std::vector<double> pert = u0;
    for (std::size_t i = 0; i < pert.size(); ++i) {
        double x = p.xi[i];
        pert[i] += 0.1 * std::exp(-(x - 2.0) * (x - 2.0));
    }
    CHECK(kernel_simplicity(pert, p, model_a()) > 1e-2);
}
