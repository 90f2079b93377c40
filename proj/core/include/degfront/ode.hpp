#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace degfront {

// Small embedded Dormand-Prince 5(4) integrator for the phase-plane systems.
// Fixed state dimension keeps the hot loop allocation-free; the library only
// ever integrates 2- or 3-dimensional systems.
template <int N>
class RungeKutta45 {
public:
    using State = std::array<double, N>;
    using Rhs = std::function<void(double, const State&, State&)>;

    struct Options {
        double rtol = 1e-10;
        double atol = 1e-10;
        double h_init = 1e-4;
        double h_max = 1e100;
        long max_steps = 50'000'000;
    };

    struct Output {
        std::vector<double> t;
        std::vector<State> y;
        bool event_hit = false;
        int event_id = -1;
    };

    // An event fires when its function crosses zero from positive to
    // non-positive.  Events are located by bisection on the dense cubic
    // Hermite interpolant of the accepted step.
    struct Event {
        std::function<double(double, const State&)> fn;
        bool terminal = true;
    };

    RungeKutta45(Rhs rhs, Options opt) : rhs_(std::move(rhs)), opt_(opt) {}

    void add_event(Event ev) { events_.push_back(std::move(ev)); }

    Output integrate(double t0, const State& y0, double t_end) const {
        Output out;
        double t = t0;
        State y = y0;
        State k1;
        rhs_(t, y, k1);
        out.t.push_back(t);
        out.y.push_back(y);

        std::vector<double> ev_prev(events_.size());
        for (size_t i = 0; i < events_.size(); ++i) ev_prev[i] = events_[i].fn(t, y);

        double h = std::min(opt_.h_init, std::min(opt_.h_max, t_end - t0));
        long steps = 0;
        while (t < t_end) {
            if (++steps > opt_.max_steps)
                throw std::runtime_error("RungeKutta45: step budget exhausted");
            if (t + h > t_end) h = t_end - t;

            State k2, k3, k4, k5, k6, k7, y5, y4, tmp;
            auto stage = [&](double frac, const double* coef, int n, State& k) {
                for (int i = 0; i < N; ++i) {
                    double acc = 0.0;
                    const State* ks[] = {&k1, &k2, &k3, &k4, &k5, &k6};
                    for (int j = 0; j < n; ++j) acc += coef[j] * (*ks[j])[i];
                    tmp[i] = y[i] + h * acc;
                }
                rhs_(t + frac * h, tmp, k);
            };
            static const double c2[] = {1.0 / 5};
            static const double c3[] = {3.0 / 40, 9.0 / 40};
            static const double c4[] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
            static const double c5[] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561,
                                        -212.0 / 729};
            static const double c6[] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247,
                                        49.0 / 176, -5103.0 / 18656};
            static const double b5[] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                                        -2187.0 / 6784, 11.0 / 84};
            static const double b4[] = {5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640,
                                        -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
            stage(1.0 / 5, c2, 1, k2);
            stage(3.0 / 10, c3, 2, k3);
            stage(4.0 / 5, c4, 3, k4);
            stage(8.0 / 9, c5, 4, k5);
            stage(1.0, c6, 5, k6);
            for (int i = 0; i < N; ++i)
                y5[i] = y[i] + h * (b5[0] * k1[i] + b5[2] * k3[i] + b5[3] * k4[i] +
                                    b5[4] * k5[i] + b5[5] * k6[i]);
            rhs_(t + h, y5, k7);
            for (int i = 0; i < N; ++i)
                y4[i] = y[i] + h * (b4[0] * k1[i] + b4[2] * k3[i] + b4[3] * k4[i] +
                                    b4[4] * k5[i] + b4[5] * k6[i] + b4[6] * k7[i]);

            double err = 0.0;
            for (int i = 0; i < N; ++i) {
                double sc = opt_.atol + opt_.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
                double e = (y5[i] - y4[i]) / sc;
                err += e * e;
            }
            err = std::sqrt(err / N);

            if (err <= 1.0 || h <= 1e-14 * std::max(1.0, std::abs(t))) {
                // accepted; check events on [t, t+h] via Hermite interpolation
                double t_new = t + h;
                int fired = -1;
                double t_fire = t_new;
                State y_fire = y5;
                for (size_t e = 0; e < events_.size(); ++e) {
                    double val = events_[e].fn(t_new, y5);
                    if (ev_prev[e] > 0.0 && val <= 0.0) {
                        double lo = t, hi = t_new;
                        State ylo = y, yhi = y5;
                        for (int it = 0; it < 80 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi));
                             ++it) {
                            double mid = 0.5 * (lo + hi);
                            State ym = hermite(t, y, k1, t_new, y5, k7, mid);
                            if (events_[e].fn(mid, ym) > 0.0) {
                                lo = mid;
                                ylo = ym;
                            } else {
                                hi = mid;
                                yhi = ym;
                            }
                        }
                        if (hi < t_fire) {
                            t_fire = hi;
                            y_fire = yhi;
                            fired = static_cast<int>(e);
                        }
                    }
                }
                if (fired >= 0 && events_[fired].terminal) {
                    out.t.push_back(t_fire);
                    out.y.push_back(y_fire);
                    out.event_hit = true;
                    out.event_id = fired;
                    return out;
                }
                t = t_new;
                y = y5;
                k1 = k7; // FSAL
                out.t.push_back(t);
                out.y.push_back(y);
                for (size_t e = 0; e < events_.size(); ++e) ev_prev[e] = events_[e].fn(t, y);
            }

            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            fac = std::min(5.0, std::max(0.2, fac));
            h = std::min(h * fac, opt_.h_max);
        }
        return out;
    }

    // cubic Hermite interpolation between two states with known derivatives
    static State hermite(double t0, const State& y0, const State& f0, double t1,
                         const State& y1, const State& f1, double t) {
        double dt = t1 - t0;
        double s = (t - t0) / dt;
        double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        double h10 = s * (1 - s) * (1 - s);
        double h01 = s * s * (3 - 2 * s);
        double h11 = s * s * (s - 1);
        State y;
        for (int i = 0; i < N; ++i)
            y[i] = h00 * y0[i] + h10 * dt * f0[i] + h01 * y1[i] + h11 * dt * f1[i];
        return y;
    }

private:
    Rhs rhs_;
    Options opt_;
    std::vector<Event> events_;
};

} // namespace degfront
