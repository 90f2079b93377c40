#include "degfront/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "degfront/ode.hpp"

namespace degfront {

std::pair<double, std::array<double, 2>> linearization_at_one(const Model& m, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("linearization_at_one: c must be positive");
    double disc = c * c - 4.0 * m.D1 * m.fp1; // f'(1) < 0 keeps this positive
    double eta = (-c + std::sqrt(disc)) / (2.0 * m.D1);
    return {eta, {1.0, eta}};
}

std::pair<double, double> center_manifold_coeffs(const Model& m, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("center_manifold_coeffs: c must be positive");
    double h1 = -m.fp0 / c;
    double h2 = -(m.fpp0 * c * c + 4.0 * m.Dp0 * m.fp0 * m.fp0) / (2.0 * c * c * c);
    return {h1, h2};
}

GridSpec GridSpec::auto_spec(const Model& m, double c, double h) {
    auto [eta, vec] = linearization_at_one(m, c);
    (void)vec;
    GridSpec g;
    g.h = h;
    double ln10 = std::log(10.0);
    g.Xp = 10.0 * c / m.fp0 * ln10;
    g.Xm = 10.0 * ln10 / eta;
    // round the extents up to whole steps so the grid hits both ends
    g.Xp = std::ceil(g.Xp / h) * h;
    g.Xm = std::ceil(g.Xm / h) * h;
    return g;
}

Orbit shoot_orbit(const Model& m, double c, double delta0, const IntegratorOpts& opts) {
    if (!(c > 0.0)) throw std::invalid_argument("shoot_orbit: c must be positive");
    if (!(delta0 > 0.0) || delta0 > 1e-4)
        throw std::invalid_argument("shoot_orbit: delta0 must lie in (0, 1e-4]");

    auto [eta, vec] = linearization_at_one(m, c);
    (void)vec;
    double s = delta0 / std::hypot(1.0, eta);

    using RK = RungeKutta45<3>;
    RK::Rhs rhs = [&m, c](double, const RK::State& y, RK::State& dy) {
        double phi = y[0], v = y[1];
        dy[0] = m.D(phi) * v;
        dy[1] = -c * v - m.Dp(phi) * v * v - m.f(phi);
        dy[2] = m.D(phi);
    };
    RK::Options ropt;
    ropt.rtol = opts.rtol;
    ropt.atol = opts.atol;
    ropt.h_max = opts.h_max;
    ropt.max_steps = opts.max_steps;

    double v_sharp = -c / m.Dp0; // saddle-node's non-trivial v-intercept
    auto [h1, h2] = center_manifold_coeffs(m, c);

    Orbit orbit;
    orbit.c = c;
    orbit.delta0 = delta0;

    RK::State y0 = {1.0 - s, -eta * s, 0.0};
    double tau0 = 0.0;

    // Phase 1: integrate until phi reaches phi_switch, v returns to zero, or
    // phi crashes through phi_stop.  Phase 2 (below phi_switch) swaps the
    // switch event for a center-manifold proximity event: near-threshold
    // orbits pass phi_switch still hugging the sharp trajectory and only
    // relax onto the center manifold later, and once slaved there phi decays
    // algebraically, so explicit integration down to phi_stop is impractical.
    enum { EV_UNDERSHOOT = 0, EV_STOP = 1, EV_SWITCH = 2 };
    auto run = [&](const RK::State& start, double t_start, int phase) {
        RK rk(rhs, ropt);
        rk.add_event({[](double, const RK::State& y) { return -y[1]; }, true});
        rk.add_event(
            {[&opts](double, const RK::State& y) { return y[0] - opts.phi_stop; }, true});
        if (phase == 1)
            rk.add_event(
                {[&opts](double, const RK::State& y) { return y[0] - opts.phi_switch; }, true});
        else
            rk.add_event({[h1, h2](double, const RK::State& y) {
                              double v_cm = h1 * y[0] + h2 * y[0] * y[0];
                              return std::abs(y[1] - v_cm) - 0.5 * std::abs(v_cm);
                          },
                          true});
        return rk.integrate(t_start, start, t_start + 1e9);
    };

    auto out = run(y0, tau0, 1);
    auto append = [&orbit](const RK::Output& o, size_t from) {
        for (size_t i = from; i < o.t.size(); ++i) {
            orbit.tau.push_back(o.t[i]);
            orbit.states.push_back({o.y[i][0], o.y[i][1]});
            orbit.xi.push_back(o.y[i][2]);
        }
    };
    append(out, 0);

    if (!out.event_hit)
        throw std::runtime_error("shoot_orbit: integration ended without classification");

    auto classify_at_stop = [&](double v) {
        if (v < v_sharp - opts.tol_v) return OrbitClass::Overshoot;
        if (std::abs(v - v_sharp) <= opts.tol_v) return OrbitClass::Sharp;
        return OrbitClass::Smooth;
    };

    if (out.event_id == EV_UNDERSHOOT) {
        orbit.classification = OrbitClass::Undershoot;
        return orbit;
    }
    if (out.event_id == EV_STOP) {
        orbit.classification = classify_at_stop(out.y.back()[1]);
        return orbit;
    }

    // Reached phi_switch: continue analytically along v = h(phi) when the
    // state is close to the center manifold, otherwise keep integrating the
    // fast regime until it either classifies or relaxes onto the manifold.
    auto continue_on_cm = [&](double phi_sw, double v_sw) {
        // center-manifold continuation on log-spaced phi samples
        const int per_decade = 400;
        double lphi0 = std::log(phi_sw);
        double lphi1 = std::log(opts.phi_stop);
        int n = static_cast<int>(std::ceil((lphi0 - lphi1) / std::log(10.0) * per_decade));
        n = std::max(n, 2);
        double tau = orbit.tau.back();
        double xi = orbit.xi.back();
        double phi_prev = phi_sw;
        double v_prev = v_sw; // blend start to keep continuity; CM from next node
        for (int k = 1; k <= n; ++k) {
            double phi = std::exp(lphi0 + (lphi1 - lphi0) * k / n);
            double v = h1 * phi + h2 * phi * phi;
            double gtau_prev = 1.0 / (m.D(phi_prev) * v_prev);
            double gtau = 1.0 / (m.D(phi) * v);
            double gxi_prev = 1.0 / v_prev;
            double gxi = 1.0 / v;
            double dphi = phi - phi_prev; // negative
            tau += dphi * 0.5 * (gtau_prev + gtau);
            xi += dphi * 0.5 * (gxi_prev + gxi);
            orbit.tau.push_back(tau);
            orbit.states.push_back({phi, v});
            orbit.xi.push_back(xi);
            phi_prev = phi;
            v_prev = v;
        }
        orbit.classification = OrbitClass::Smooth;
    };

    double phi_sw = out.y.back()[0];
    double v_sw = out.y.back()[1];
    double v_cm = h1 * phi_sw + h2 * phi_sw * phi_sw;
    if (std::abs(v_sw - v_cm) <= 0.5 * std::abs(v_cm)) {
        continue_on_cm(phi_sw, v_sw);
        return orbit;
    }

    // fast regime below phi_switch: finish the integration directly
    auto out2 = run(out.y.back(), out.t.back(), 2);
    append(out2, 1);
    if (!out2.event_hit)
        throw std::runtime_error("shoot_orbit: integration ended without classification");
    if (out2.event_id == EV_UNDERSHOOT)
        orbit.classification = OrbitClass::Undershoot;
    else if (out2.event_id == EV_STOP)
        orbit.classification = classify_at_stop(out2.y.back()[1]);
    else
        continue_on_cm(out2.y.back()[0], out2.y.back()[1]);
    return orbit;
}

double estimate_c_star(const Model& m, std::pair<double, double> bracket, double tol) {
    auto [lo, hi] = bracket;
    if (!(lo > 0.0) || !(hi > lo) || !(tol > 0.0))
        throw std::invalid_argument("estimate_c_star: invalid bracket or tolerance");
    auto smooth = [&m](double c) {
        return shoot_orbit(m, c).classification == OrbitClass::Smooth;
    };
    if (smooth(lo) || !smooth(hi))
        throw std::invalid_argument(
            "estimate_c_star: bracket must classify lo as non-Smooth and hi as Smooth");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (smooth(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// cubic Hermite evaluation of (phi, v) on the orbit's xi nodes
struct HermiteCurve {
    const std::vector<double>& x;
    const std::vector<double>& f;
    const std::vector<double>& df;

    double eval(double xq) const {
        auto it = std::upper_bound(x.begin(), x.end(), xq);
        size_t i = (it == x.begin()) ? 0 : static_cast<size_t>(it - x.begin()) - 1;
        if (i >= x.size() - 1) i = x.size() - 2;
        double dx = x[i + 1] - x[i];
        double s = (xq - x[i]) / dx;
        double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        double h10 = s * (1 - s) * (1 - s);
        double h01 = s * s * (3 - 2 * s);
        double h11 = s * s * (s - 1);
        return h00 * f[i] + h10 * dx * df[i] + h01 * f[i + 1] + h11 * dx * df[i + 1];
    }
};

} // namespace

FrontProfile reconstruct_profile(const Orbit& orbit, const Model& m, double c,
                                 const GridSpec& grid) {
    if (orbit.classification != OrbitClass::Smooth)
        throw std::invalid_argument("reconstruct_profile: orbit is not Smooth");
    if (!(grid.h > 0.0)) throw std::invalid_argument("reconstruct_profile: h must be positive");

    // strictly increasing xi / strictly decreasing phi node filter
    std::vector<double> xs, ph, vv;
    xs.reserve(orbit.xi.size());
    for (size_t i = 0; i < orbit.xi.size(); ++i) {
        double x = orbit.xi[i], p = orbit.states[i][0], v = orbit.states[i][1];
        if (!xs.empty() && !(x > xs.back() && p < ph.back())) continue;
        xs.push_back(x);
        ph.push_back(p);
        vv.push_back(v);
    }
    if (xs.size() < 4) throw std::runtime_error("reconstruct_profile: too few orbit samples");

    // derivative of v along xi from the chain rule
    std::vector<double> dv(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        double p = ph[i], v = vv[i];
        dv[i] = (-c * v - m.Dp(p) * v * v - m.f(p)) / m.D(p);
    }
    HermiteCurve Pphi{xs, ph, vv};
    HermiteCurve Pv{xs, vv, dv};

    // anchor xi = 0 at phi = 1/2
    auto it = std::lower_bound(ph.begin(), ph.end(), 0.5, std::greater<double>());
    if (it == ph.begin() || it == ph.end())
        throw std::runtime_error("reconstruct_profile: orbit does not straddle phi = 1/2");
    size_t ih = static_cast<size_t>(it - ph.begin());
    double lo = xs[ih - 1], hi = xs[ih];
    for (int k = 0; k < 100 && hi - lo > 1e-15; ++k) {
        double mid = 0.5 * (lo + hi);
        (Pphi.eval(mid) > 0.5 ? lo : hi) = mid;
    }
    double xi_half = 0.5 * (lo + hi);

    auto [eta, vec] = linearization_at_one(m, c);
    (void)vec;

    FrontProfile p;
    p.c = c;
    p.h = grid.h;
    p.Xm = grid.Xm;
    p.Xp = grid.Xp;
    p.rate_minus = eta;
    p.rate_plus = m.fp0 / c;

    double xlo = xs.front() - xi_half;
    double xhi = xs.back() - xi_half;
    double K = (1.0 - ph.front()) * std::exp(-eta * xlo);
    double phi_hi = ph.back();

    long n = std::lround((grid.Xm + grid.Xp) / grid.h) + 1;
    p.xi.resize(n);
    p.phi.resize(n);
    p.phix.resize(n);
    for (long j = 0; j < n; ++j) {
        double x = -grid.Xm + j * grid.h;
        p.xi[j] = x;
        if (x < xlo) {
            p.phi[j] = 1.0 - K * std::exp(eta * x);
            p.phix[j] = -K * eta * std::exp(eta * x);
        } else if (x > xhi) {
            p.phi[j] = phi_hi * std::exp(-p.rate_plus * (x - xhi));
            p.phix[j] = -p.rate_plus * p.phi[j];
        } else {
            p.phi[j] = Pphi.eval(x + xi_half);
            p.phix[j] = Pv.eval(x + xi_half);
        }
    }

    for (long j = 0; j < n; ++j) {
        if (!(p.phix[j] < 0.0) || !(p.phi[j] > 0.0) || !(p.phi[j] < 1.0))
            throw std::runtime_error("reconstruct_profile: non-monotone interpolant detected");
        if (j > 0 && !(p.phi[j] < p.phi[j - 1]))
            throw std::runtime_error("reconstruct_profile: non-monotone interpolant detected");
    }

    // grid point nearest the phi = 1/2 crossing
    size_t ia = 0;
    double best = 2.0;
    for (long j = 0; j < n; ++j) {
        double d = std::abs(p.phi[j] - 0.5);
        if (d < best) {
            best = d;
            ia = static_cast<size_t>(j);
        }
    }
    p.anchor_index = ia;
    p.x0_anchor = p.xi[ia];
    return p;
}

std::vector<double> profile_residual(const FrontProfile& p, const Model& m) {
    size_t n = p.phi.size();
    std::vector<double> g(n), r(n - 2);
    for (size_t i = 0; i < n; ++i) g[i] = m.D(p.phi[i]) * p.phix[i];
    for (size_t i = 1; i + 1 < n; ++i)
        r[i - 1] = (g[i + 1] - g[i - 1]) / (2.0 * p.h) + p.c * p.phix[i] + m.f(p.phi[i]);
    return r;
}

double profile_phixx(const FrontProfile& p, const Model& m, std::size_t i) {
    double phi = p.phi[i], v = p.phix[i];
    double Dv = m.D(phi);
    if (Dv >= 1e-8)
        return (-p.c * v - m.f(phi) - m.Dp(phi) * v * v) / Dv;
    return p.rate_plus * p.rate_plus * phi; // differentiated right-tail ansatz
}

} // namespace degfront
