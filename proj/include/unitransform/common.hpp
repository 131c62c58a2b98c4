#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ut {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};
inline constexpr double PI = 3.14159265358979323846;

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<cplx(double)>;

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> xs(n);
    if (n == 1) {
        xs[0] = a;
        return xs;
    }
    const double h = (b - a) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) xs[i] = a + h * double(i);
    xs.back() = b;
    return xs;
}

inline double sup_norm(std::span<const cplx> v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

// Relative L2 distance between two equally sampled fields.
inline double rel_l2(std::span<const cplx> a, std::span<const cplx> b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

/// Chunked parallel loop; f(i) must be independent across i. With threads
/// <= 1 the loop runs inline.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f);

}  // namespace ut
