#include "unitransform/ode.hpp"

#include <algorithm>
#include <cmath>

#include "unitransform/errors.hpp"

namespace ut::ode {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 4th-order embedded weights.
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

inline State2 axpy(const State2& y, double h, const State2& k) {
    return {y[0] + h * k[0], y[1] + h * k[1]};
}

}  // namespace

State2 integrate(const Rhs2& rhs, double x0, double x1, State2 y0, const Options& opt,
                 std::span<const double> samples,
                 const std::function<void(std::size_t, const State2&)>& on_sample) {
    const double dir = (x1 >= x0) ? 1.0 : -1.0;
    const double span = std::abs(x1 - x0);
    if (span == 0.0) {
        for (std::size_t i = 0; i < samples.size(); ++i)
            if (on_sample) on_sample(i, y0);
        return y0;
    }

    double x = x0;
    State2 y = y0;
    double h = dir * std::min(opt.initial_step, span);
    std::size_t next_sample = 0;

    // Emit samples sitting at (or behind) the start point.
    while (next_sample < samples.size() && dir * (samples[next_sample] - x) <= 1e-14 * span) {
        if (on_sample) on_sample(next_sample, y);
        ++next_sample;
    }

    State2 k1, k2, k3, k4, k5, k6, k7;
    rhs(x, y, k1);  // FSAL seed

    for (std::size_t step = 0; step < opt.max_steps; ++step) {
        if (dir * (x1 - x) <= 0.0) break;

        // Clamp to the next sample point and to the end.
        double h_try = h;
        double target = x1;
        if (next_sample < samples.size() && dir * (samples[next_sample] - target) < 0.0)
            target = samples[next_sample];
        if (dir * (x + h_try - target) > 0.0) h_try = target - x;

        State2 yt;
        yt = axpy(y, h_try * a21, k1);
        rhs(x + c2 * h_try, yt, k2);
        yt = {y[0] + h_try * (a31 * k1[0] + a32 * k2[0]), y[1] + h_try * (a31 * k1[1] + a32 * k2[1])};
        rhs(x + c3 * h_try, yt, k3);
        yt = {y[0] + h_try * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
              y[1] + h_try * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1])};
        rhs(x + c4 * h_try, yt, k4);
        yt = {y[0] + h_try * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
              y[1] + h_try * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1])};
        rhs(x + c5 * h_try, yt, k5);
        yt = {y[0] + h_try * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0]),
              y[1] + h_try * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1])};
        rhs(x + h_try, yt, k6);
        State2 y5 = {y[0] + h_try * (b1 * k1[0] + b3 * k3[0] + b4 * k4[0] + b5 * k5[0] + b6 * k6[0]),
                     y[1] + h_try * (b1 * k1[1] + b3 * k3[1] + b4 * k4[1] + b5 * k5[1] + b6 * k6[1])};
        rhs(x + h_try, y5, k7);
        State2 y4 = {y[0] + h_try * (e1 * k1[0] + e3 * k3[0] + e4 * k4[0] + e5 * k5[0] + e6 * k6[0] +
                                     e7 * k7[0]),
                     y[1] + h_try * (e1 * k1[1] + e3 * k3[1] + e4 * k4[1] + e5 * k5[1] + e6 * k6[1] +
                                     e7 * k7[1])};

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double sc =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err = std::max(err, std::abs(y5[i] - y4[i]) / sc);
        }

        if (err <= 1.0) {
            x += h_try;
            y = y5;
            k1 = k7;
            while (next_sample < samples.size() &&
                   dir * (samples[next_sample] - x) <= 1e-14 * (span + std::abs(x))) {
                if (on_sample) on_sample(next_sample, y);
                ++next_sample;
            }
        }

        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
        h = dir * std::min(std::abs(h_try) * fac, span);
        if (std::abs(h) < opt.min_step)
            throw IntegrationFailure("ode: step size underflow at x=" + std::to_string(x));
    }

    if (dir * (x1 - x) > 1e-12 * span)
        throw IntegrationFailure("ode: max step count exceeded");

    while (next_sample < samples.size()) {
        if (on_sample) on_sample(next_sample, y);
        ++next_sample;
    }
    return y;
}

}  // namespace ut::ode
