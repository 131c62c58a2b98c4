#include "unitransform/special.hpp"

#include <cmath>
#include <complex>

namespace ut::special {

namespace {

constexpr double EULER_GAMMA = 0.57721566490153286060651209;

// E1(z) by modified Lentz continued fraction; used for z = x and z = +-ix
// with |z| >= 1, away from the branch cut.
std::complex<double> expint_e1_cf(std::complex<double> z) {
    const double tiny = 1e-30;
    std::complex<double> b = z + 1.0;
    std::complex<double> c = 1.0 / tiny;
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int i = 1; i <= 300; ++i) {
        const double a = -double(i) * double(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const std::complex<double> del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-z) * h;
}

}  // namespace

double sine_integral(double x) {
    if (x < 0.0) return -sine_integral(-x);
    if (x < 4.0) {
        double term = x;
        double sum = x;
        for (int n = 1; n < 40; ++n) {
            term *= -x * x / double((2 * n) * (2 * n + 1));
            sum += term / double(2 * n + 1);
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    // Si(x) = pi/2 + (E1(ix) - E1(-ix)) / (2i)
    const std::complex<double> diff =
        expint_e1_cf({0.0, x}) - expint_e1_cf({0.0, -x});
    return 2.0 * std::atan(1.0) + 0.5 * std::imag(diff);
}

double cosine_integral(double x) {
    if (x < 4.0) {
        // Ci(x) = gamma + ln x + sum (-x^2)^n / (2n (2n)!)
        double sum = EULER_GAMMA + std::log(x);
        double term = 1.0;
        for (int n = 1; n < 40; ++n) {
            term *= -x * x / double((2 * n - 1) * (2 * n));
            sum += term / double(2 * n);
            if (std::abs(term) < 1e-18) break;
        }
        return sum;
    }
    // Ci(x) = -(E1(ix) + E1(-ix)) / 2
    const std::complex<double> sum = expint_e1_cf({0.0, x}) + expint_e1_cf({0.0, -x});
    return -0.5 * std::real(sum);
}

double expint_e1(double x) {
    if (x <= 0.0) return std::nan("");
    if (x < 1.0) {
        double sum = -EULER_GAMMA - std::log(x);
        double term = 1.0;
        for (int n = 1; n < 40; ++n) {
            term *= -x / double(n);
            sum -= term / double(n);
            if (std::abs(term) < 1e-18) break;
        }
        return sum;
    }
    return std::real(expint_e1_cf({x, 0.0}));
}

double ci_plus_e1(double x) {
    if (x <= 0.0) return 0.0;
    if (x < 1e-8) return x;  // gamma and log terms cancel; leading term is x
    return cosine_integral(x) + expint_e1(x);
}

}  // namespace ut::special
