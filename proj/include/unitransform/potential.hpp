#pragma once

#include <string>

#include "unitransform/common.hpp"
#include "unitransform/table.hpp"

namespace ut {

enum class DomainKind { half_line, full_line };

/// Real decaying potential. Immutable after construction; safe to share
/// across threads.
struct Potential {
    RealFn eval;
    double x_support = 0.0;   // |eval| < truncation_tol beyond this distance
    double moment_bound = 0.0;  // estimate of int (1+x^2)|u| dx
    DomainKind domain_kind = DomainKind::half_line;
    double truncation_tol = 1e-10;

    double operator()(double x) const { return eval(x); }
};

struct Sech2Params {
    double p = 1.0;
    double x0 = 2.0;
};

Potential make_zero(DomainKind domain = DomainKind::half_line);

/// u(x) = 2 p^2 / cosh^2(p (x - x0)), the one-soliton reflectionless well.
Potential make_sech2(const Sech2Params& params, DomainKind domain = DomainKind::half_line,
                     double truncation_tol = 1e-10);

Potential make_gaussian(double amplitude, double center, double width,
                        DomainKind domain = DomainKind::half_line, double truncation_tol = 1e-10);

/// Wraps an arbitrary decaying callable; the support is located by a doubling
/// search followed by bisection against the truncation tolerance.
Potential make_from_callable(RealFn u, DomainKind domain, double truncation_tol = 1e-10);

/// Sampled potential, cubic interpolation inside the table, zero outside.
Potential make_tabulated(const RealTable& table, DomainKind domain = DomainKind::half_line,
                         double truncation_tol = 1e-10);
Potential load_potential_csv(const std::string& path, DomainKind domain = DomainKind::half_line);

/// Quadrature estimate of int (1+x^2)|u| dx over the domain. Throws
/// DivergentMoment when tail partial sums keep growing.
double validate_moment(const Potential& potential);

}  // namespace ut
