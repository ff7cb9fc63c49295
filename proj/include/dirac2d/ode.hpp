#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "dirac2d/common.hpp"

namespace dirac2d::ode {

// Adaptive Dormand-Prince 5(4) with FSAL and Hairer-style per-component
// error scaling. State must be an Eigen vector type (real or complex).
struct DP54Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_initial = 0.0;  // 0 -> (t1 - t0) / 100
    double h_min = 0.0;      // 0 -> 1e4 * eps * |span|
    long max_steps = 2'000'000;
};

namespace detail {

// Butcher tableau of the Dormand-Prince 5(4) pair.
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                        a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                        a65 = -5103.0 / 18656.0;
inline constexpr std::array<double, 7> b5 = {35.0 / 384.0,      0.0,
                                             500.0 / 1113.0,    125.0 / 192.0,
                                             -2187.0 / 6784.0,  11.0 / 84.0,
                                             0.0};
inline constexpr std::array<double, 7> b4 = {5179.0 / 57600.0,    0.0,
                                             7571.0 / 16695.0,    393.0 / 640.0,
                                             -92097.0 / 339200.0, 187.0 / 2100.0,
                                             1.0 / 40.0};
inline constexpr std::array<double, 7> cc = {0.0,       1.0 / 5.0, 3.0 / 10.0,
                                             4.0 / 5.0, 8.0 / 9.0, 1.0,
                                             1.0};

}  // namespace detail

// Integrates y' = f(t, y) from t0 to t1 (t1 > t0). The optional observer is
// called after every accepted step with (t, y); it also fires once at t0.
template <class State, class F>
State integrate(F&& f, State y, double t0, double t1, const DP54Options& opt = {},
                const std::function<void(double, const State&)>& observer = nullptr) {
    using namespace detail;
    const double span = t1 - t0;
    if (span == 0.0) {
        if (observer) observer(t0, y);
        return y;
    }
    if (span < 0.0) throw config_error("ode::integrate requires t1 >= t0");

    const double hmin =
        opt.h_min > 0.0 ? opt.h_min : 1e4 * std::numeric_limits<double>::epsilon() * span;
    double h = opt.h_initial > 0.0 ? opt.h_initial : span / 100.0;
    h = std::min(h, span);

    double t = t0;
    if (observer) observer(t, y);
    std::array<State, 7> k;
    k[0] = f(t, y);
    long steps = 0;
    const long nvar = static_cast<long>(y.size());

    while (t < t1) {
        if (++steps > opt.max_steps)
            throw numerical_error("ode::integrate exceeded the step budget");
        h = std::min(h, t1 - t);
        if (h < hmin && t + h < t1)
            throw numerical_error("ode::integrate step size underflow (tolerance not met)");

        k[1] = f(t + cc[1] * h, State(y + h * (a21 * k[0])));
        k[2] = f(t + cc[2] * h, State(y + h * (a31 * k[0] + a32 * k[1])));
        k[3] = f(t + cc[3] * h, State(y + h * (a41 * k[0] + a42 * k[1] + a43 * k[2])));
        k[4] = f(t + cc[4] * h,
                 State(y + h * (a51 * k[0] + a52 * k[1] + a53 * k[2] + a54 * k[3])));
        k[5] = f(t + cc[5] * h, State(y + h * (a61 * k[0] + a62 * k[1] + a63 * k[2] +
                                               a64 * k[3] + a65 * k[4])));
        State y5 = y + h * (b5[0] * k[0] + b5[2] * k[2] + b5[3] * k[3] + b5[4] * k[4] +
                            b5[5] * k[5]);
        k[6] = f(t + h, y5);
        State y4 = y + h * (b4[0] * k[0] + b4[2] * k[2] + b4[3] * k[3] + b4[4] * k[4] +
                            b4[5] * k[5] + b4[6] * k[6]);

        double err = 0.0;
        for (long i = 0; i < nvar; ++i) {
            const double sc =
                opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            const double e = std::abs(y5[i] - y4[i]) / sc;
            err += e * e;
        }
        err = std::sqrt(err / static_cast<double>(nvar));

        if (err <= 1.0) {
            t += h;
            y = std::move(y5);
            k[0] = k[6];  // FSAL
            if (observer) observer(t, y);
        }
        const double fac =
            err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h *= fac;
    }
    return y;
}

// Same integrator, but lands exactly on each entry of `times` (strictly
// increasing) and reports the state there.
template <class State, class F>
State integrate_to_times(F&& f, State y, const std::vector<double>& times,
                         const DP54Options& opt,
                         const std::function<void(double, const State&)>& at_sample) {
    if (times.empty()) return y;
    if (at_sample) at_sample(times.front(), y);
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        y = integrate(f, std::move(y), times[i], times[i + 1], opt);
        if (at_sample) at_sample(times[i + 1], y);
    }
    return y;
}

}  // namespace dirac2d::ode
