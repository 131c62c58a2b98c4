#pragma once

#include <functional>
#include <vector>

namespace ut::roots {

/// Sign-change scan followed by bisection. Roots of even multiplicity that do
/// not change sign are missed. Results are sorted ascending.
std::vector<double> bracket_roots(const std::function<double(double)>& f, double lo, double hi,
                                  int scan_points = 400, int max_roots = 64, double xtol = 1e-10);

}  // namespace ut::roots
