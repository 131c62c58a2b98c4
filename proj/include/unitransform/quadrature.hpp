#pragma once

#include <functional>
#include <span>
#include <vector>

#include "unitransform/common.hpp"

namespace ut::quad {

/// One contour piece, parametrized over s in [0,1].
struct Segment {
    enum class Kind { line, arc };
    Kind kind = Kind::line;
    cplx a{}, b{};        // line endpoints
    cplx center{};        // arc data
    double radius = 0.0;
    double theta0 = 0.0, theta1 = 0.0;

    static Segment line(cplx a, cplx b) { return {Kind::line, a, b, {}, 0.0, 0.0, 0.0}; }
    static Segment arc(cplx center, double radius, double theta0, double theta1) {
        return {Kind::arc, {}, {}, center, radius, theta0, theta1};
    }
    cplx point(double s) const;
    cplx derivative(double s) const;  // dz/ds
    double length() const;
    cplx start() const { return point(0.0); }
    cplx end() const { return point(1.0); }
};

/// Side of the travel direction the detour bulges toward: `left` is the
/// +90-degree rotation of the direction of traversal. On a ray traversed
/// downward along the positive imaginary axis, `left` bulges into the first
/// quadrant (Re k > 0) and `right` into the second.
enum class IndentSide { right, left };

struct Indent {
    cplx pole;
    double radius;
    IndentSide side;
};

struct Contour {
    std::vector<Segment> segments;

    void add_line(cplx a, cplx b) { segments.push_back(Segment::line(a, b)); }
    void add_arc(cplx c, double r, double th0, double th1) {
        segments.push_back(Segment::arc(c, r, th0, th1));
    }
    /// Append a straight run from a to b detouring around the given poles,
    /// which must lie strictly between a and b on the segment.
    void add_indented_line(cplx a, cplx b, std::span<const Indent> indents);

    bool connected(double tol = 1e-9) const;
};

struct QuadratureResult {
    cplx value{};
    double error_estimate = 0.0;
    int panels_used = 0;
};

using Integrand = std::function<cplx(cplx)>;
/// Local oscillation rate (radians per unit arclength) at a contour point;
/// used to size the initial panels of oscillatory integrands.
using PhaseRate = std::function<double(cplx)>;

struct QuadOptions {
    double tol = 1e-9;          // absolute error target
    int max_panels = 20000;
    double rad_per_panel = 6.0; // initial panel width in phase radians
    bool throw_on_failure = true;
};

QuadratureResult integrate_contour(const Integrand& f, const Contour& contour,
                                   const QuadOptions& opt = {}, const PhaseRate& rate = nullptr);

/// Convenience: adaptive integral over a real interval.
QuadratureResult integrate(const std::function<cplx(double)>& f, double a, double b,
                           const QuadOptions& opt = {}, const PhaseRate& rate = nullptr);

/// Fixed quadrature nodes with both Kronrod and embedded Gauss weights.
/// Callers that batch-evaluate expensive integrands use these directly;
/// summing with w_kronrod gives the value, |sum(w_kronrod) - sum(w_gauss)|
/// the error estimate.
struct NodeSet {
    std::vector<cplx> z;
    std::vector<cplx> w_kronrod;
    std::vector<cplx> w_gauss;  // zero entries at Kronrod-only nodes
    int panels = 0;
};

NodeSet make_nodes(const Contour& contour, double rad_per_panel, const PhaseRate& rate = nullptr,
                   double min_panel = 1e-12);

/// Composite Gauss-Legendre(12) nodes over [a,b] paneled by oscillation rate.
/// Used for data-side quadratures where the integrand is smooth.
struct RealNodes {
    std::vector<double> x;
    std::vector<double> w;
};
RealNodes gauss_panels(double a, double b, double rad_per_panel,
                       const std::function<double(double)>& rate = nullptr);

}  // namespace ut::quad
