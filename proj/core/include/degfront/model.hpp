#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace degfront {

// Degenerate diffusion D(u) = alpha*u + beta*u^2 paired with the logistic
// reaction f(u) = u(1-u).  The scalars cached below show up in every closed
// form of the stability analysis, so they are computed once at construction.
struct Model {
    double alpha = 1.0;
    double beta = 0.0;

    // cached derived scalars
    double fp0 = 1.0;   // f'(0)
    double fp1 = -1.0;  // f'(1)
    double D1 = 1.0;    // D(1)
    double Dp0 = 1.0;   // D'(0)
    double fpp0 = -2.0; // f''(0)

    Model() { recompute(); }
    Model(double a, double b) : alpha(a), beta(b) { recompute(); }

    void recompute() {
        fp0 = 1.0;
        fp1 = -1.0;
        D1 = alpha + beta;
        Dp0 = alpha;
        fpp0 = -2.0;
    }

    double D(double u) const { return alpha * u + beta * u * u; }
    double Dp(double u) const { return alpha + 2.0 * beta * u; }
    double Dpp(double) const { return 2.0 * beta; }
    double f(double u) const { return u * (1.0 - u); }
    double fp(double u) const { return 1.0 - 2.0 * u; }
    double fpp(double) const { return -2.0; }
};

enum class Which { Diffusion, Reaction };

inline double eval(const Model& m, double u, Which which, int order) {
    if (order < 0 || order > 2)
        throw std::invalid_argument("eval: derivative order must be 0, 1 or 2");
    if (which == Which::Diffusion) {
        switch (order) {
        case 0: return m.D(u);
        case 1: return m.Dp(u);
        default: return m.Dpp(u);
        }
    }
    switch (order) {
    case 0: return m.f(u);
    case 1: return m.fp(u);
    default: return m.fpp(u);
    }
}

struct HypothesisViolation {
    std::string hypothesis; // e.g. "D'(u) > 0 on [0,1]"
    double u = 0.0;
    double observed = 0.0;
};

struct HypothesisReport {
    bool passed = true;
    std::vector<HypothesisViolation> violations;
};

// Samples the structural hypotheses (1.2)/(1.4) on a uniform grid of [0,1].
// Only the worst offender per hypothesis is recorded.
HypothesisReport check_hypotheses(const Model& m, int n_samples = 101);

// max{c*, f'(0) sqrt(D(1)) / sqrt(f'(0) - f'(1))}  (Theorem 1.1 / Eq. (6.3))
double speed_threshold(const Model& m, double c_star);

struct KnownCStar {
    double value = 0.0;
    bool approximate = false; // true for the small-beta Shigesada formula
};

// Closed-form threshold speeds quoted in section 6: c* = sqrt(alpha/2) for
// D = alpha*u, and the small-eps approximation (1 + eps/5)/sqrt(2) for
// D = u + eps*u^2 with eps <= 0.2.
std::optional<KnownCStar> known_c_star(const Model& m);

// JSON round trip: {"D": {"alpha": .., "beta": ..}, "f": "logistic"}
std::string model_to_json(const Model& m);
Model model_from_json(const std::string& text);

} // namespace degfront
