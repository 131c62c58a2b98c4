#pragma once

#include <array>
#include <functional>
#include <span>

#include "unitransform/common.hpp"

namespace ut::ode {

using State2 = std::array<cplx, 2>;
using Rhs2 = std::function<void(double x, const State2& y, State2& dydx)>;

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 1e-3;
    double min_step = 1e-14;
    std::size_t max_steps = 2'000'000;
};

/// Adaptive Dormand-Prince 5(4) integration of a two-component complex system
/// from x0 to x1 (either direction). If `samples` is nonempty it must be
/// monotone in the direction of integration; `on_sample(i, y)` is called with
/// the state at each sample point. Returns the state at x1.
/// Throws IntegrationFailure on step-size underflow.
State2 integrate(const Rhs2& rhs, double x0, double x1, State2 y0, const Options& opt = {},
                 std::span<const double> samples = {},
                 const std::function<void(std::size_t, const State2&)>& on_sample = nullptr);

}  // namespace ut::ode
