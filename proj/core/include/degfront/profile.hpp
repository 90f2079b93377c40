#pragma once

#include <array>
#include <utility>
#include <vector>

#include "degfront/model.hpp"

namespace degfront {

enum class OrbitClass { Smooth, Sharp, Undershoot, Overshoot };

// Desingularized phase-plane orbit of dphi/dtau = D(phi) v,
// dv/dtau = -c v - D'(phi) v^2 - f(phi), launched from the unstable manifold
// of (1, 0).  xi carries the physical coordinate, d xi / d tau = D(phi).
struct Orbit {
    std::vector<double> tau;
    std::vector<std::array<double, 2>> states; // (phi, v)
    std::vector<double> xi;
    OrbitClass classification = OrbitClass::Undershoot;
    double c = 0.0;
    double delta0 = 0.0;
};

struct IntegratorOpts {
    double rtol = 1e-10;
    double atol = 1e-10;
    double phi_stop = 1e-9;
    double phi_switch = 1e-4; // hand over to the center manifold below this
    double tol_v = 1e-3;      // sharp-front detector half-width
    // cap on the tau step: accepted steps set the node spacing for the cubic
    // Hermite reconstruction, whose error grows like (D(1) h_max)^4
    double h_max = 0.1;
    long max_steps = 50'000'000;
};

struct GridSpec {
    double h = 0.01;
    double Xm = 40.0; // domain is [-Xm, Xp]
    double Xp = 40.0;

    // truncation rule: predicted tail magnitude below 1e-10 at both ends
    static GridSpec auto_spec(const Model& m, double c, double h);
};

struct FrontProfile {
    std::vector<double> xi;   // uniform grid on [-Xm, Xp]
    std::vector<double> phi;  // values in (0,1)
    std::vector<double> phix; // d phi / d xi, negative everywhere
    double c = 0.0;
    double h = 0.0;
    double Xm = 0.0;
    double Xp = 0.0;
    double rate_minus = 0.0; // eta of Lemma 2.2
    double rate_plus = 0.0;  // f'(0)/c
    double x0_anchor = 0.0;  // grid point nearest phi = 1/2
    std::size_t anchor_index = 0;
};

// eta = (2 D(1))^{-1} (-c + sqrt(c^2 - 4 D(1) f'(1))) and the unstable
// eigenvector (1, eta) of the linearization at (1, 0).
std::pair<double, std::array<double, 2>> linearization_at_one(const Model& m, double c);

// Two-term center manifold at the degenerate saddle-node:
// h(phi) = h1 phi + h2 phi^2, h1 = -f'(0)/c,
// h2 = -(f''(0) c^2 + 4 D'(0) f'(0)^2) / (2 c^3).
std::pair<double, double> center_manifold_coeffs(const Model& m, double c);

Orbit shoot_orbit(const Model& m, double c, double delta0 = 1e-6,
                  const IntegratorOpts& opts = {});

// Bisection on the Smooth / non-Smooth classification.
double estimate_c_star(const Model& m, std::pair<double, double> bracket, double tol);

FrontProfile reconstruct_profile(const Orbit& orbit, const Model& m, double c,
                                 const GridSpec& grid);

// Central-difference residual of (D(phi) phi_x)_x + c phi_x + f(phi) at the
// interior grid points (size N - 2).
std::vector<double> profile_residual(const FrontProfile& p, const Model& m);

// phi_xx at grid point i, from the profile equation where D(phi) >= 1e-8 and
// from the differentiated right-tail ansatz beyond.
double profile_phixx(const FrontProfile& p, const Model& m, std::size_t i);

} // namespace degfront
