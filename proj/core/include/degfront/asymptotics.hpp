#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "degfront/model.hpp"
#include "degfront/profile.hpp"

namespace degfront {

using cplx = std::complex<double>;

enum class TailSide { Plus, Minus };
enum class DecayClass { SingleExponential, FasterThanExponential, Inconclusive };

struct DecayReport {
    TailSide side = TailSide::Plus;
    double fitted_rate = 0.0;    // signed: positive means decay, negative growth
    double predicted_rate = 0.0;
    double r_squared = 0.0;
    DecayClass classification = DecayClass::Inconclusive;
    double beta = 0.0; // 2 f'(0)/c, kept for traceability of the Appendix forms
};

// Least-squares line through log(samples) vs x, plus a blocked local-slope
// sequence: FasterThanExponential iff the local log-slope magnitude increases
// monotonically by more than 20% across the window.
DecayReport fit_decay(const std::vector<double>& x, const std::vector<double>& samples,
                      double predicted_rate, TailSide side);

// rho = -c/D(phi) - 2 f(phi)/(D(phi) phi_x), the division-safe substituted
// form; D(phi) is replaced by D'(0) phi where it drops below 1e-8.
std::vector<double> rho(const FrontProfile& p, const Model& m);

// F(x, lambda) = lambda/D(phi) + rho_x/2 + rho^2/4 (rho_x by central
// differences; one-sided at the edges).
std::vector<cplx> F_potential(const FrontProfile& p, const Model& m, cplx lambda);

// Trapezoid of |F''| F^{-3/2} over the window plus the analytic tail
// contribution for F ~ A e^{beta x} beyond the last sample (A read off the
// final sample).  Throws when F <= 0 anywhere (Coppel hypothesis violated).
double coppel_check(const std::vector<double>& x, const std::vector<double>& F, double beta);

// zeta(x) ~ e^{f'(0)x/2c} exp(-(c^2/2D'(0)f'(0)) e^{f'(0)x/c}), evaluated in
// log space and normalized to 1 at the left edge of the window.
std::vector<double> coppel_envelope(const Model& m, double c, const std::vector<double>& x);

struct TailAudit {
    DecayReport phi;
    DecayReport phix;
    DecayReport phi_weighted;  // e^{ax}-weighted, predicted rate f'(0)/c - a
    DecayReport phix_weighted;
    std::optional<DecayReport> eigvec;
    double envelope_r2 = 0.0; // log-log correlation against the Theta*zeta form
    double window_lo = 0.0, window_hi = 0.0;
    double a = 0.0;
    DecayClass classification = DecayClass::Inconclusive; // regime the data supports
};

// Right-tail decay measurements of phi, phi_x and (optionally) an eigenvector,
// raw and e^{ax}-weighted, adjudicated between the single-exponential rate of
// Lemma 2.2 and the double-exponential Theta*zeta envelope of Lemma A.1.
TailAudit tail_audit(const FrontProfile& p, const Model& m, double a,
                     const std::vector<double>* eigvec = nullptr);

} // namespace degfront
