#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "degfront/model.hpp"
#include "degfront/profile.hpp"

namespace degfront {

using cplx = std::complex<double>;

enum class Side { Plus, Minus }; // u+ = 0 (degenerate), u- = 1

// Second-order central-difference discretization of
//   b2(x) u'' + b1(x) u' + b0(x) u
// with the conjugated coefficients of Eq. (6.1) and Dirichlet rows at both
// ends; only the (N-2)x(N-2) interior block is stored (tridiagonal).
struct OperatorMatrix {
    std::vector<double> sub, diag, sup; // sizes n-1, n, n-1 with n = N-2
    std::vector<double> b2, b1, b0;     // coefficient samples at interior nodes
    double h = 0.0;
    long N = 0; // full grid size including the two Dirichlet rows
    double Xm = 0.0, Xp = 0.0;
    double eps = 0.0;
    double a = 0.0;

    long n() const { return N - 2; }
    // y = M x for an interior-sized vector
    std::vector<double> apply(const std::vector<double>& x) const;
};

OperatorMatrix assemble(const FrontProfile& profile, const Model& m, double eps, double a);

void export_matrix_market(const OperatorMatrix& M, const std::string& path);

// lambda^{eps,±}_a(k) = D^eps(u±)(a^2 - k^2) - a c + f'(u±) + i k (c - 2 a D^eps(u±))
cplx dispersion_point(const Model& m, double c, double eps, double a, Side side, double k);
std::vector<cplx> dispersion_curve(const Model& m, double c, double eps, double a, Side side,
                                   const std::vector<double>& k_grid);

// max of the two vertex values D^eps(u±) a^2 - a c + f'(u±); Re(lambda) above
// this bound puts lambda in the region of consistent splitting Omega(a, eps).
double consistent_splitting_bound(const Model& m, double c, double eps, double a);

// Roots of pi^{eps,±}_a(lambda, z) = z^2 + (b1±/b2±) z + (b0± - lambda)/b2±,
// ordered by real part.  Requires eps > 0 so that both sides are hyperbolic.
std::pair<cplx, cplx> asymptotic_matrix_roots(const Model& m, double c, double eps, double a,
                                              cplx lambda, Side side);

struct MorseIndexReport {
    int dimU_plus = 0;
    int dimS_minus = 0;
    int predicted_index = 0;
    bool on_border = false; // a root sits on the imaginary axis (within 1e-12)
};

MorseIndexReport morse_index_report(const Model& m, double c, double eps, double a, cplx lambda);

struct WeightPlan {
    bool speed_ok = false;
    double a_lower = 0.0; // f'(0)/c
    double a_upper = 0.0; // a0(c)
    double recommended_a = 0.0;
    bool empty = true;
};

// Interval (f'(0)/c, a0(c)) of Eq. (6.6), nonempty iff c exceeds the
// threshold max{c*, f'(0) sqrt(D(1))/sqrt(f'(0)-f'(1))}.
WeightPlan weight_plan(const Model& m, double c, double c_star);

struct SCurves {
    std::vector<double> k;
    std::vector<cplx> s_plus;  // i c k + f'(0) - a c
    std::vector<cplx> s_minus; // -D(1) k^2 + i (c - 2 a D(1)) k + a^2 D(1) - a c + f'(1)
};

SCurves s_curves(const Model& m, double c, double a, const std::vector<double>& k_grid);

// rightmost real part over both S curves (attained at k = 0 vertices)
double s_curves_max_re(const Model& m, double c, double a);

} // namespace degfront
