#pragma once

#include <complex>
#include <vector>

#include "degfront/model.hpp"
#include "degfront/profile.hpp"

namespace degfront {

using cplx = std::complex<double>;

// theta(x) = -(c/2) int_{x0}^x ds / D(phi(s)) by trapezoid quadrature; the
// integrand switches to the analytic tail form -c/(2 D'(0) phi) where D(phi)
// drops below 1e-8.  theta(x0) = 0 exactly.
std::vector<double> theta(const FrontProfile& p, const Model& m, double x0);

// H(x) = -(c/2) D(phi)_x / D(phi) - c^2/(4 D(phi)) + D(phi)_xx + f'(phi)
std::vector<double> compute_H(const FrontProfile& p, const Model& m);

struct EnergyReport {
    cplx lambda{0.0, 0.0};
    cplx lhs{0.0, 0.0};         // lambda <D(phi) w, w> on the window
    double rhs = 0.0;           // -||D(phi) psi (w/psi)_x||^2, always <= 0
    cplx boundary_term{0.0, 0.0};
    double relative_residual = 0.0;
    double window_l = 0.0, window_r = 0.0;
    bool window_shrunk = false; // overflow guard moved the requested edges
};

// Windowed discrete version of the basic energy identity (Eq. (4.9)) with
// explicit boundary corrections.  u lives on the full grid (size N) or on the
// interior (size N-2, zero-padded).
EnergyReport energy_identity(const std::vector<cplx>& u, cplx lambda, const FrontProfile& p,
                             const Model& m, double window_l, double window_r);

// Direct banded solve of the transformed eigenvalue equation (Eq. (4.7)) on
// the window; returns the full-grid u = e^{theta} w (zero outside the
// window).  Used as the method-of-manufactured-solutions oracle.
std::vector<cplx> manufacture_solution(const FrontProfile& p, const Model& m, double lambda,
                                       double window_l, double window_r);

// Coefficient of variation of (e^{-theta} u0)/psi over the central window;
// values <= 1e-3 confirm u0 is parallel to phi_x (Corollary 4.4).
double kernel_simplicity(const std::vector<double>& u0, const FrontProfile& p, const Model& m);

} // namespace degfront
