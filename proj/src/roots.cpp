#include "unitransform/roots.hpp"

#include <cmath>

namespace ut::roots {

std::vector<double> bracket_roots(const std::function<double(double)>& f, double lo, double hi,
                                  int scan_points, int max_roots, double xtol) {
    std::vector<double> roots;
    if (!(hi > lo) || scan_points < 2) return roots;
    const double h = (hi - lo) / double(scan_points);
    double xa = lo, fa = f(xa);
    for (int i = 1; i <= scan_points && int(roots.size()) < max_roots; ++i) {
        const double xb = (i == scan_points) ? hi : lo + h * double(i);
        double fb = f(xb);
        if (fa == 0.0) {
            roots.push_back(xa);
        } else if (fa * fb < 0.0) {
            double a = xa, b = xb, va = fa;
            while (b - a > xtol) {
                const double m = 0.5 * (a + b);
                const double vm = f(m);
                if (vm == 0.0) {
                    a = b = m;
                    break;
                }
                if (va * vm < 0.0)
                    b = m;
                else {
                    a = m;
                    va = vm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        xa = xb;
        fa = fb;
    }
    return roots;
}

}  // namespace ut::roots
