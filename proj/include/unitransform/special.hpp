#pragma once

namespace ut::special {

/// Sine integral Si(x) = int_0^x sin(t)/t dt.
double sine_integral(double x);

/// Cosine integral Ci(x) for x > 0.
double cosine_integral(double x);

/// Exponential integral E1(x) for x > 0.
double expint_e1(double x);

/// Ci(x) + E1(x); finite at x -> 0+ where the logarithms cancel.
double ci_plus_e1(double x);

}  // namespace ut::special
