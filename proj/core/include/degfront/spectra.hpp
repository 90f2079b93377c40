#pragma once

#include <complex>
#include <vector>

#include "degfront/model.hpp"
#include "degfront/operators.hpp"
#include "degfront/profile.hpp"

namespace degfront {

struct EigenDecomp {
    // sorted by descending real part (ties: ascending imaginary part)
    std::vector<cplx> values;
    // right eigenvectors, unit discrete L2 norm; empty unless requested
    std::vector<std::vector<cplx>> vectors;
};

// Dense nonsymmetric eigensolve (LAPACK dgeev) of the interior block.
EigenDecomp eigen_decomp(const OperatorMatrix& M, bool want_vectors);

// Fraction of L2 mass inside the middle half of the domain; >= 0.9 flags a
// point-spectrum candidate.
double localization_score(const std::vector<cplx>& vec);

enum class Verdict { Stable, Unstable, Marginal };

struct SpectrumReport {
    std::vector<cplx> eigenvalues;
    std::vector<double> localization_scores; // empty when vectors not computed
    cplx rightmost_any{0.0, 0.0};
    cplx rightmost_localized{0.0, 0.0};
    bool has_localized = false;
    Verdict verdict = Verdict::Marginal;
    bool empty_spectrum = false;
    double analytic_border_max = 0.0; // rightmost Re over the S± curves
    double eps = 0.0, a = 0.0, h = 0.0;
    long N = 0;
    double tol_stab = 1e-6;
};

SpectrumReport spectrum_report(const OperatorMatrix& M, const Model& m, double c,
                               double tol_stab = 1e-6);

struct RegSweepRow {
    double eps = 0.0;
    std::vector<cplx> ten; // ten rightmost localized eigenvalues
    double drift = 0.0;    // max greedy-matched distance to the eps = 0 row
    bool flagged = false;  // matching ambiguity (collision within 1e-10)
    double lam0_drift = 0.0; // ||(M_eps - M_0) phi_x||_inf / ||phi_x||_inf
};

struct RegSweep {
    std::vector<RegSweepRow> rows; // leading row is eps = 0
    double slope = 0.0;            // fit of log drift vs log eps (eps > 0 rows)
};

RegSweep regularization_sweep(const FrontProfile& profile, const Model& m, double a,
                              const std::vector<double>& eps_list);

// interior phi_x as an eigen-style vector (used by the lambda = 0 oracles)
std::vector<double> interior_phix(const FrontProfile& p);

} // namespace degfront
