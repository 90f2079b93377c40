#include "degfront/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <lapacke.h>

namespace degfront {

EigenDecomp eigen_decomp(const OperatorMatrix& M, bool want_vectors) {
    lapack_int n = static_cast<lapack_int>(M.n());
    if (n < 1) throw std::invalid_argument("eigen_decomp: empty matrix");

    std::vector<double> A(static_cast<size_t>(n) * n, 0.0);
    for (lapack_int i = 0; i < n; ++i) {
        A[static_cast<size_t>(i) * n + i] = M.diag[i];
        if (i > 0) A[static_cast<size_t>(i) * n + i - 1] = M.sub[i - 1];
        if (i + 1 < n) A[static_cast<size_t>(i) * n + i + 1] = M.sup[i];
    }

    std::vector<double> wr(n), wi(n), vr(want_vectors ? static_cast<size_t>(n) * n : 1);
    lapack_int info =
        LAPACKE_dgeev(LAPACK_ROW_MAJOR, 'N', want_vectors ? 'V' : 'N', n, A.data(), n,
                      wr.data(), wi.data(), nullptr, n, vr.data(), n);
    if (info != 0) throw std::runtime_error("eigen_decomp: dgeev failed to converge");

    std::vector<lapack_int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](lapack_int a, lapack_int b) {
        if (wr[a] != wr[b]) return wr[a] > wr[b];
        return wi[a] < wi[b];
    });

    EigenDecomp out;
    out.values.reserve(n);
    for (lapack_int j : order) out.values.push_back({wr[j], wi[j]});

    if (want_vectors) {
        out.vectors.resize(n);
        for (lapack_int idx = 0; idx < n; ++idx) {
            lapack_int j = order[idx];
            std::vector<cplx> v(n);
            if (wi[j] == 0.0) {
                for (lapack_int i = 0; i < n; ++i) v[i] = vr[static_cast<size_t>(i) * n + j];
            } else {
                // dgeev stores conjugate pairs in consecutive columns
                lapack_int jr = (wi[j] > 0.0) ? j : j - 1;
                double sgn = (wi[j] > 0.0) ? 1.0 : -1.0;
                for (lapack_int i = 0; i < n; ++i)
                    v[i] = {vr[static_cast<size_t>(i) * n + jr],
                            sgn * vr[static_cast<size_t>(i) * n + jr + 1]};
            }
            double nrm = 0.0;
            for (const cplx& z : v) nrm += std::norm(z);
            nrm = std::sqrt(nrm);
            if (nrm > 0.0)
                for (cplx& z : v) z /= nrm;
            out.vectors[idx] = std::move(v);
        }
    }
    return out;
}

double localization_score(const std::vector<cplx>& vec) {
    size_t n = vec.size();
    if (n == 0) return 0.0;
    double total = 0.0, mid = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double m2 = std::norm(vec[i]);
        total += m2;
        if (i >= n / 4 && i < 3 * n / 4) mid += m2;
    }
    return total > 0.0 ? mid / total : 0.0;
}

SpectrumReport spectrum_report(const OperatorMatrix& M, const Model& m, double c,
                               double tol_stab) {
    SpectrumReport rep;
    rep.eps = M.eps;
    rep.a = M.a;
    rep.h = M.h;
    rep.N = M.N;
    rep.tol_stab = tol_stab;
    rep.analytic_border_max = s_curves_max_re(m, c, M.a);

    EigenDecomp ed = eigen_decomp(M, true);
    rep.eigenvalues = ed.values;
    rep.localization_scores.reserve(ed.values.size());
    for (const auto& v : ed.vectors) rep.localization_scores.push_back(localization_score(v));

    if (rep.eigenvalues.empty()) {
        rep.empty_spectrum = true;
        rep.verdict = Verdict::Marginal;
        return rep;
    }
    rep.rightmost_any = rep.eigenvalues.front(); // sorted by Re descending
    for (size_t i = 0; i < rep.eigenvalues.size(); ++i) {
        if (rep.localization_scores[i] >= 0.9) {
            rep.rightmost_localized = rep.eigenvalues[i];
            rep.has_localized = true;
            break;
        }
    }

    double max_re = rep.rightmost_any.real();
    if (std::abs(max_re) <= tol_stab)
        rep.verdict = Verdict::Marginal;
    else if (max_re < 0.0)
        rep.verdict = Verdict::Stable;
    else
        rep.verdict = Verdict::Unstable;
    return rep;
}

std::vector<double> interior_phix(const FrontProfile& p) {
    return std::vector<double>(p.phix.begin() + 1, p.phix.end() - 1);
}

namespace {

std::vector<cplx> ten_rightmost_localized(const OperatorMatrix& M) {
    EigenDecomp ed = eigen_decomp(M, true);
    std::vector<cplx> ten;
    for (size_t i = 0; i < ed.values.size() && ten.size() < 10; ++i)
        if (localization_score(ed.vectors[i]) >= 0.9) ten.push_back(ed.values[i]);
    return ten;
}

} // namespace

RegSweep regularization_sweep(const FrontProfile& profile, const Model& m, double a,
                              const std::vector<double>& eps_list) {
    for (size_t i = 0; i + 1 < eps_list.size(); ++i)
        if (!(eps_list[i] > eps_list[i + 1]) || !(eps_list[i + 1] > 0.0))
            throw std::invalid_argument(
                "regularization_sweep: eps_list must be positive and decreasing");

    OperatorMatrix M0 = assemble(profile, m, 0.0, a);
    std::vector<double> px = interior_phix(profile);
    double px_inf = 0.0;
    for (double v : px) px_inf = std::max(px_inf, std::abs(v));
    std::vector<double> r0 = M0.apply(px);

    RegSweep sweep;
    RegSweepRow base_row;
    base_row.eps = 0.0;
    base_row.ten = ten_rightmost_localized(M0);
    base_row.drift = 0.0; // self-comparison
    base_row.lam0_drift = 0.0;
    sweep.rows.push_back(base_row);
    const std::vector<cplx> base = base_row.ten;

    for (double eps : eps_list) {
        OperatorMatrix Me = assemble(profile, m, eps, a);
        RegSweepRow row;
        row.eps = eps;
        row.ten = ten_rightmost_localized(Me);

        // greedy nearest-neighbor matching against the eps = 0 set
        std::vector<bool> used(base.size(), false);
        for (const cplx& lam : row.ten) {
            double best = -1.0, second = -1.0;
            size_t jbest = base.size();
            for (size_t j = 0; j < base.size(); ++j) {
                if (used[j]) continue;
                double d = std::abs(lam - base[j]);
                if (best < 0.0 || d < best) {
                    second = best;
                    best = d;
                    jbest = j;
                } else if (second < 0.0 || d < second) {
                    second = d;
                }
            }
            if (jbest == base.size()) break; // base exhausted
            if (second >= 0.0 && second - best <= 1e-10) row.flagged = true;
            used[jbest] = true;
            row.drift = std::max(row.drift, best);
        }

        std::vector<double> re = Me.apply(px);
        double dmax = 0.0;
        for (size_t i = 0; i < re.size(); ++i) dmax = std::max(dmax, std::abs(re[i] - r0[i]));
        row.lam0_drift = px_inf > 0.0 ? dmax / px_inf : 0.0;

        sweep.rows.push_back(std::move(row));
    }

    // least-squares slope of log10(drift) vs log10(eps)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& row : sweep.rows) {
        if (row.eps <= 0.0 || row.drift <= 0.0) continue;
        double x = std::log10(row.eps), y = std::log10(row.drift);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    sweep.slope = cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
    return sweep;
}

} // namespace degfront
