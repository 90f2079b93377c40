#include "degfront/operators.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace degfront {

std::vector<double> OperatorMatrix::apply(const std::vector<double>& x) const {
    size_t nn = diag.size();
    if (x.size() != nn) throw std::invalid_argument("OperatorMatrix::apply: size mismatch");
    std::vector<double> y(nn);
    for (size_t i = 0; i < nn; ++i) {
        double acc = diag[i] * x[i];
        if (i > 0) acc += sub[i - 1] * x[i - 1];
        if (i + 1 < nn) acc += sup[i] * x[i + 1];
        y[i] = acc;
    }
    return y;
}

OperatorMatrix assemble(const FrontProfile& p, const Model& m, double eps, double a) {
    if (eps < 0.0) throw std::invalid_argument("assemble: eps must be non-negative");
    long N = static_cast<long>(p.phi.size());
    long n = N - 2;
    if (n < 1) throw std::invalid_argument("assemble: grid too small");

    OperatorMatrix M;
    M.h = p.h;
    M.N = N;
    M.Xm = p.Xm;
    M.Xp = p.Xp;
    M.eps = eps;
    M.a = a;
    M.sub.resize(n - 1);
    M.diag.resize(n);
    M.sup.resize(n - 1);
    M.b2.resize(n);
    M.b1.resize(n);
    M.b0.resize(n);

    double h = p.h, c = p.c;
    for (long i = 0; i < n; ++i) {
        long j = i + 1; // full-grid index
        double phi = p.phi[j], phix = p.phix[j];
        double phixx = profile_phixx(p, m, j);
        double De = m.D(phi) + eps;
        double Dex = m.Dp(phi) * phix;                                // (D^eps(phi))_x
        double Dexx = m.Dpp(phi) * phix * phix + m.Dp(phi) * phixx;   // (D^eps(phi))_xx
        double b2 = De;
        double b1 = 2.0 * Dex - 2.0 * a * De + c;
        double b0 = a * a * De - 2.0 * a * Dex - a * c + Dexx + m.fp(phi);
        M.b2[i] = b2;
        M.b1[i] = b1;
        M.b0[i] = b0;
        M.diag[i] = -2.0 * b2 / (h * h) + b0;
        if (i > 0) M.sub[i - 1] = b2 / (h * h) - b1 / (2.0 * h);
        if (i + 1 < n) M.sup[i] = b2 / (h * h) + b1 / (2.0 * h);
    }
    return M;
}

void export_matrix_market(const OperatorMatrix& M, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("export_matrix_market: cannot open " + path);
    long n = M.n();
    long nnz = 3 * n - 2;
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << n << " " << n << " " << nnz << "\n";
    char buf[64];
    for (long i = 0; i < n; ++i) {
        if (i > 0) {
            std::snprintf(buf, sizeof buf, "%ld %ld %.17g\n", i + 1, i, M.sub[i - 1]);
            os << buf;
        }
        std::snprintf(buf, sizeof buf, "%ld %ld %.17g\n", i + 1, i + 1, M.diag[i]);
        os << buf;
        if (i + 1 < n) {
            std::snprintf(buf, sizeof buf, "%ld %ld %.17g\n", i + 1, i + 2, M.sup[i]);
            os << buf;
        }
    }
}

namespace {
double u_of(Side s) { return s == Side::Plus ? 0.0 : 1.0; }
} // namespace

cplx dispersion_point(const Model& m, double c, double eps, double a, Side side, double k) {
    double De = m.D(u_of(side)) + eps;
    double fpu = m.fp(u_of(side));
    return {De * (a * a - k * k) - a * c + fpu, k * (c - 2.0 * a * De)};
}

std::vector<cplx> dispersion_curve(const Model& m, double c, double eps, double a, Side side,
                                   const std::vector<double>& k_grid) {
    std::vector<cplx> out;
    out.reserve(k_grid.size());
    for (double k : k_grid) out.push_back(dispersion_point(m, c, eps, a, side, k));
    return out;
}

double consistent_splitting_bound(const Model& m, double c, double eps, double a) {
    double vp = (m.D(0.0) + eps) * a * a - a * c + m.fp0;
    double vm = (m.D(1.0) + eps) * a * a - a * c + m.fp1;
    return std::max(vp, vm);
}

std::pair<cplx, cplx> asymptotic_matrix_roots(const Model& m, double c, double eps, double a,
                                              cplx lambda, Side side) {
    if (!(eps > 0.0))
        throw std::invalid_argument(
            "asymptotic_matrix_roots: eps must be positive (degenerate side otherwise)");
    double De = m.D(u_of(side)) + eps;
    double b2 = De;
    double b1 = c - 2.0 * a * De;
    double b0 = a * a * De - a * c + m.fp(u_of(side));
    cplx A = b1 / b2;
    cplx B = (b0 - lambda) / b2;
    cplx disc = std::sqrt(A * A / 4.0 - B);
    cplx z1 = -A / 2.0 - disc;
    cplx z2 = -A / 2.0 + disc;
    if (z1.real() > z2.real()) std::swap(z1, z2);
    return {z1, z2};
}

MorseIndexReport morse_index_report(const Model& m, double c, double eps, double a,
                                    cplx lambda) {
    MorseIndexReport rep;
    auto count = [&](Side side, int& unstable, int& stable) {
        auto [z1, z2] = asymptotic_matrix_roots(m, c, eps, a, lambda, side);
        for (const cplx& z : {z1, z2}) {
            if (std::abs(z.real()) <= 1e-12) {
                rep.on_border = true;
            } else if (z.real() > 0.0) {
                ++unstable;
            } else {
                ++stable;
            }
        }
    };
    int up = 0, sp = 0, um = 0, sm = 0;
    count(Side::Plus, up, sp);
    count(Side::Minus, um, sm);
    rep.dimU_plus = up;
    rep.dimS_minus = sm;
    rep.predicted_index = up - sm;
    return rep;
}

WeightPlan weight_plan(const Model& m, double c, double c_star) {
    if (!(c > 0.0) || !(c_star > 0.0))
        throw std::invalid_argument("weight_plan: speeds must be positive");
    WeightPlan plan;
    plan.speed_ok = c > speed_threshold(m, c_star);
    plan.a_lower = m.fp0 / c;
    plan.a_upper = (c + std::sqrt(c * c - 4.0 * m.D1 * m.fp1)) / (2.0 * m.D1);
    if (plan.speed_ok && plan.a_lower < plan.a_upper) {
        plan.recommended_a = 0.5 * (plan.a_lower + plan.a_upper);
        plan.empty = false;
    } else {
        plan.recommended_a = 0.0;
        plan.empty = true;
    }
    return plan;
}

SCurves s_curves(const Model& m, double c, double a, const std::vector<double>& k_grid) {
    SCurves sc;
    sc.k = k_grid;
    sc.s_plus.reserve(k_grid.size());
    sc.s_minus.reserve(k_grid.size());
    for (double k : k_grid) {
        sc.s_plus.push_back({m.fp0 - a * c, c * k});
        sc.s_minus.push_back(
            {-m.D1 * k * k + a * a * m.D1 - a * c + m.fp1, (c - 2.0 * a * m.D1) * k});
    }
    return sc;
}

double s_curves_max_re(const Model& m, double c, double a) {
    double plus = m.fp0 - a * c;                      // constant in k
    double minus = a * a * m.D1 - a * c + m.fp1;      // vertex at k = 0
    return std::max(plus, minus);
}

} // namespace degfront
