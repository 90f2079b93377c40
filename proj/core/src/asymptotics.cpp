#include "degfront/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "degfront/energy.hpp"

namespace degfront {

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y, size_t lo,
                      size_t hi) { // [lo, hi)
    double n = static_cast<double>(hi - lo);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = lo; i < hi; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit f;
    double den = n * sxx - sx * sx;
    f.slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
    f.intercept = (sy - f.slope * sx) / n;
    double ssr = 0, sst = 0, ybar = sy / n;
    for (size_t i = lo; i < hi; ++i) {
        double e = y[i] - (f.intercept + f.slope * x[i]);
        ssr += e * e;
        sst += (y[i] - ybar) * (y[i] - ybar);
    }
    f.r2 = sst > 0.0 ? std::clamp(1.0 - ssr / sst, 0.0, 1.0) : 1.0;
    return f;
}

} // namespace

DecayReport fit_decay(const std::vector<double>& x, const std::vector<double>& samples,
                      double predicted_rate, TailSide side) {
    size_t n = samples.size();
    if (x.size() != n) throw std::invalid_argument("fit_decay: size mismatch");
    if (n < 10) throw std::invalid_argument("fit_decay: window too short");
    for (double s : samples)
        if (!(s > 0.0)) throw std::invalid_argument("fit_decay: samples must be positive");

    std::vector<double> y(n);
    for (size_t i = 0; i < n; ++i) y[i] = std::log(samples[i]);

    double sgn = (side == TailSide::Plus) ? -1.0 : 1.0; // positive rate = decay
    LineFit global = least_squares(x, y, 0, n);

    DecayReport rep;
    rep.side = side;
    rep.predicted_rate = predicted_rate;
    rep.fitted_rate = sgn * global.slope;
    rep.r_squared = global.r2;

    // blocked local log-slope sequence
    size_t nb = std::min<size_t>(8, n / 5);
    bool faster = false;
    if (nb >= 3) {
        std::vector<double> rates(nb);
        for (size_t b = 0; b < nb; ++b) {
            size_t lo = b * n / nb, hi = (b + 1) * n / nb;
            rates[b] = sgn * least_squares(x, y, lo, hi).slope;
        }
        bool monotone = true;
        for (size_t b = 0; b + 1 < nb; ++b)
            if (!(rates[b + 1] >= rates[b] * (1.0 - 1e-3)) || !(rates[b] > 0.0))
                monotone = false;
        faster = monotone && rates.back() > 0.0 && rates.back() > 1.2 * rates.front();
    }

    if (faster)
        rep.classification = DecayClass::FasterThanExponential;
    else if (global.r2 >= 0.98)
        rep.classification = DecayClass::SingleExponential;
    else
        rep.classification = DecayClass::Inconclusive;
    return rep;
}

std::vector<double> rho(const FrontProfile& p, const Model& m) {
    size_t n = p.phi.size();
    std::vector<double> out(n);
    double c = p.c;
    for (size_t i = 0; i < n; ++i) {
        double phi = p.phi[i], phix = p.phix[i];
        if (!(phix < 0.0)) throw std::runtime_error("rho: profile not monotone on the window");
        double D = m.D(phi);
        if (D < 1e-8) {
            if (phi < 1e-300) throw std::runtime_error("rho: phi below machine floor");
            D = m.Dp0 * phi; // degenerate-tail substitution
        }
        out[i] = -c / D - 2.0 * m.f(phi) / (D * phix);
    }
    return out;
}

std::vector<cplx> F_potential(const FrontProfile& p, const Model& m, cplx lambda) {
    std::vector<double> r = rho(p, m);
    size_t n = r.size();
    double h = p.h;
    std::vector<cplx> F(n);
    for (size_t i = 0; i < n; ++i) {
        double rx;
        if (i == 0)
            rx = (r[1] - r[0]) / h;
        else if (i + 1 == n)
            rx = (r[n - 1] - r[n - 2]) / h;
        else
            rx = (r[i + 1] - r[i - 1]) / (2.0 * h);
        double D = m.D(p.phi[i]);
        if (D < 1e-8) D = m.Dp0 * p.phi[i];
        F[i] = lambda / D + 0.5 * rx + 0.25 * r[i] * r[i];
    }
    return F;
}

double coppel_check(const std::vector<double>& x, const std::vector<double>& F, double beta) {
    size_t n = F.size();
    if (x.size() != n || n < 5) throw std::invalid_argument("coppel_check: bad window");
    for (double v : F)
        if (!(v > 0.0)) throw std::runtime_error("coppel_check: F <= 0 on the window");
    double h = x[1] - x[0];
    std::vector<double> g(n);
    for (size_t i = 1; i + 1 < n; ++i) {
        double Fpp = (F[i + 1] - 2.0 * F[i] + F[i - 1]) / (h * h);
        g[i] = std::abs(Fpp) * std::pow(F[i], -1.5);
    }
    g[0] = g[1];
    g[n - 1] = g[n - 2];
    double total = 0.0;
    for (size_t i = 0; i + 1 < n; ++i) total += 0.5 * h * (g[i] + g[i + 1]);
    // analytic continuation beyond the window for F ~ A e^{beta x}: the
    // integrand is beta^2 A^{-1/2} e^{-beta x / 2}, whose tail integral
    // collapses to 2 beta / sqrt(F_end)
    if (beta > 0.0) total += 2.0 * beta / std::sqrt(F.back());
    return total;
}

std::vector<double> coppel_envelope(const Model& m, double c, const std::vector<double>& x) {
    if (!(c > 0.0)) throw std::invalid_argument("coppel_envelope: c must be positive");
    size_t n = x.size();
    std::vector<double> logz(n);
    double K = c * c / (2.0 * m.Dp0 * m.fp0);
    for (size_t i = 0; i < n; ++i)
        logz[i] = 0.5 * m.fp0 * x[i] / c - K * std::exp(m.fp0 * x[i] / c);
    std::vector<double> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = std::exp(logz[i] - logz[0]);
    return out;
}

TailAudit tail_audit(const FrontProfile& p, const Model& m, double a,
                     const std::vector<double>* eigvec) {
    size_t N = p.phi.size();
    double c = p.c;
    double beta = 2.0 * m.fp0 / c;

    // right-tail fit window: from where phi has dropped to 1e-2, stopping
    // before the last 10% of the domain (tail-extension region)
    double x_hi = p.Xp - 0.1 * (p.Xm + p.Xp);
    size_t lo = 0;
    while (lo < N && p.phi[lo] > 1e-2) ++lo;
    size_t hi = N;
    while (hi > 0 && p.xi[hi - 1] > x_hi) --hi;
    if (lo + 10 >= hi) {
        lo = 0;
        while (lo < N && p.phi[lo] > 0.1) ++lo;
    }
    if (lo + 10 >= hi) throw std::runtime_error("tail_audit: right-tail window too short");

    std::vector<double> xs(p.xi.begin() + lo, p.xi.begin() + hi);
    size_t nw = xs.size();
    auto window_of = [&](auto getter) {
        std::vector<double> s(nw);
        for (size_t i = 0; i < nw; ++i) s[i] = getter(lo + i);
        return s;
    };
    std::vector<double> sphi = window_of([&](size_t i) { return p.phi[i]; });
    std::vector<double> sphix = window_of([&](size_t i) { return std::abs(p.phix[i]); });

    TailAudit audit;
    audit.a = a;
    audit.window_lo = xs.front();
    audit.window_hi = xs.back();

    double rate0 = m.fp0 / c;
    audit.phi = fit_decay(xs, sphi, rate0, TailSide::Plus);
    audit.phix = fit_decay(xs, sphix, rate0, TailSide::Plus);

    auto weighted = [&](const std::vector<double>& s) {
        std::vector<double> w(nw);
        for (size_t i = 0; i < nw; ++i) w[i] = s[i] * std::exp(a * xs[i]);
        return w;
    };
    audit.phi_weighted = fit_decay(xs, weighted(sphi), rate0 - a, TailSide::Plus);
    audit.phix_weighted = fit_decay(xs, weighted(sphix), rate0 - a, TailSide::Plus);

    std::vector<double> primary = sphix;
    size_t np = nw; // representable prefix used for the primary fits
    if (eigvec) {
        std::vector<double> v = *eigvec;
        if (v.size() + 2 == N) {
            v.insert(v.begin(), 0.0);
            v.push_back(0.0);
        } else if (v.size() != N) {
            throw std::invalid_argument("tail_audit: eigenvector size mismatch");
        }
        std::vector<double> sv(nw);
        for (size_t i = 0; i < nw; ++i) sv[i] = std::max(std::abs(v[lo + i]), 1e-300);
        // doubly-exponential data underflows within a few units of x; fit only
        // the prefix that stays comfortably inside double range
        size_t rep = 0;
        while (rep < nw && sv[rep] > 1e-280) ++rep;
        if (rep >= 20) {
            np = rep;
            sv.resize(np);
        }
        std::vector<double> xv(xs.begin(), xs.begin() + np);
        audit.eigvec = fit_decay(xv, sv, rate0, TailSide::Plus);
        primary = std::move(sv);
    }

    // log-log correlation of the primary quantity against Theta * zeta
    std::vector<double> th = theta(p, m, p.x0_anchor);
    double K = c * c / (2.0 * m.Dp0 * m.fp0);
    std::vector<double> log_env(np), log_dat(np);
    for (size_t i = 0; i < np; ++i) {
        log_env[i] = th[lo + i] + 0.5 * m.fp0 * xs[i] / c - K * std::exp(m.fp0 * xs[i] / c);
        log_dat[i] = std::log(primary[i]);
    }
    audit.envelope_r2 = least_squares(log_env, log_dat, 0, np).r2;

    const DecayReport& lead = eigvec ? *audit.eigvec : audit.phix;
    audit.classification = lead.classification;
    if (lead.classification == DecayClass::Inconclusive && audit.envelope_r2 >= 0.99)
        audit.classification = DecayClass::FasterThanExponential;

    for (DecayReport* r : {&audit.phi, &audit.phix, &audit.phi_weighted, &audit.phix_weighted})
        r->beta = beta;
    if (audit.eigvec) audit.eigvec->beta = beta;
    return audit;
}

} // namespace degfront
