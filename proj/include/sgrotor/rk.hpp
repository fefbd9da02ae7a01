#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

#include "sgrotor/errors.hpp"

namespace sgr::rk {

struct rk_options {
    double rtol     = 1e-9;
    double atol     = 1e-12;
    bool fixed_step = false;
    double fixed_dt = 0.0;  // required when fixed_step
    double h_init   = 1e-7;
    double h_min    = 1e-14;
};

struct rk_stats {
    std::size_t steps    = 0;
    std::size_t rejected = 0;
    std::size_t evals    = 0;
};

// Dormand-Prince 5(4). Steps are truncated so that every entry of
// sample_times (sorted, within [t0,t1]) and t1 itself are hit exactly;
// sink(t, y) fires at each sample time. sample_times entries <= t0 fire
// before the first step. The controller's step estimate survives
// truncations. Throws integration_error on step underflow or non-finite
// state.
template <std::size_t N, class RHS, class Sink>
rk_stats integrate(RHS&& f, double t0, double t1, std::array<double, N>& y,
                   const rk_options& opt, std::span<const double> sample_times,
                   Sink&& sink) {
    using vec = std::array<double, N>;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    rk_stats st;
    double t = t0;
    std::size_t next_sample = 0;
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t0) {
        sink(t0, y);
        ++next_sample;
    }

    vec k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, yerr;
    f(t, y, k1);
    ++st.evals;
    double h_nom = opt.fixed_step ? opt.fixed_dt : opt.h_init;
    if (h_nom <= 0.0) throw integration_error("non-positive initial step", t);

    const double tiny = std::numeric_limits<double>::min();
    while (t < t1) {
        double t_stop = t1;
        if (next_sample < sample_times.size() && sample_times[next_sample] < t_stop)
            t_stop = sample_times[next_sample];
        if (!opt.fixed_step && h_nom < opt.h_min)
            throw integration_error("step size underflow", t);
        const bool truncated = t + h_nom >= t_stop;
        const double h = truncated ? t_stop - t : h_nom;

        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        f(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        f(t + h, ytmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(t + h, ynew, k7);
        st.evals += 6;

        double err = 0.0;
        if (!opt.fixed_step) {
            for (std::size_t i = 0; i < N; ++i) {
                yerr[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                               e7 * k7[i]);
                const double sc =
                    opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                const double r = yerr[i] / (sc + tiny);
                err += r * r;
            }
            err = std::sqrt(err / static_cast<double>(N));
        }

        if (opt.fixed_step || err <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7; // FSAL
            ++st.steps;
            for (std::size_t i = 0; i < N; ++i)
                if (!std::isfinite(y[i])) throw integration_error("non-finite state", t);
            // the truncated step lands within a few ulp of the stop; fire the
            // sink with the requested time so sampled grids are bit-exact
            const double t_eps =
                64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
            while (next_sample < sample_times.size() &&
                   sample_times[next_sample] <= t + t_eps &&
                   sample_times[next_sample] <= t1) {
                sink(sample_times[next_sample], y);
                ++next_sample;
            }
            if (!opt.fixed_step && !truncated) {
                const double fac =
                    (err > 0.0) ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
                h_nom = h * fac;
            }
        } else {
            ++st.rejected;
            const double shrink = std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
            h_nom = h * shrink;
        }
    }
    return st;
}

} // namespace sgr::rk
