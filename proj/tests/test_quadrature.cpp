#include <doctest.h>

#include <cmath>

#include "unitransform/errors.hpp"
#include "unitransform/quadrature.hpp"

using namespace ut;
using quad::Contour;
using quad::Indent;
using quad::IndentSide;

TEST_CASE("constant over an interval") {
    const auto r = quad::integrate([](double) { return cplx(1.0); }, -1.0, 1.0);
    CHECK(std::abs(r.value - 2.0) < 1e-12);
    CHECK(r.error_estimate < 1e-12);
}

TEST_CASE("exponential along an imaginary segment") {
    Contour c;
    c.add_line(cplx(0.0, 0.0), cplx(0.0, 1.0));
    const auto r = quad::integrate_contour([](cplx k) { return std::exp(k); }, c);
    CHECK(std::abs(r.value - (std::exp(I) - 1.0)) < 1e-12);
}

TEST_CASE("oscillatory integrand with phase-aware paneling") {
    const double w = 43.0;
    const auto r = quad::integrate([&](double x) { return std::exp(I * w * x); }, 0.0, 10.0,
                                   {}, [&](cplx) { return w; });
    const cplx exact = (std::exp(I * w * 10.0) - 1.0) / (I * w);
    CHECK(std::abs(r.value - exact) < 1e-11);
}

TEST_CASE("indented quarter-circle boundary vs residue theorem") {
    const cplx pole(0.0, 0.5);
    auto f = [&](cplx k) { return 1.0 / (k - pole); };
    auto make = [&](IndentSide side) {
        Contour c;
        c.add_line(cplx(0.0, 0.0), cplx(1.0, 0.0));
        c.add_arc(cplx(0.0, 0.0), 1.0, 0.0, PI / 2);
        Indent ind{pole, 0.1, side};
        c.add_indented_line(cplx(0.0, 1.0), cplx(0.0, 0.0), {&ind, 1});
        CHECK(c.connected());
        return quad::integrate_contour(f, c).value;
    };
    // Traveling down the imaginary axis, a left detour bulges into the
    // enclosed quadrant and excludes the pole; a right detour encloses it.
    CHECK(std::abs(make(IndentSide::left)) < 1e-10);
    CHECK(std::abs(make(IndentSide::right) - 2.0 * PI * I) < 1e-10);
}

TEST_CASE("negative real axis rotates onto the downward imaginary ray") {
    // Integrand analytic in the second quadrant apart from an imaginary-axis
    // pole; the rotated contour must detour on the second-quadrant side.
    const cplx pole(0.0, 0.8);
    auto f = [&](cplx k) { return std::exp(0.5 * I * k) / ((k - pole) * (k + 2.0 * I)); };
    const double K = 60.0;

    const auto direct = quad::integrate([&](double x) { return f(cplx(x, 0.0)); }, -K, 0.0,
                                        {}, [](cplx) { return 1.0; });

    auto ray = [&](IndentSide side) {
        Contour c;
        Indent ind{pole, 0.08, side};
        c.add_indented_line(cplx(0.0, K), cplx(0.0, 0.0), {&ind, 1});
        return quad::integrate_contour(f, c).value;
    };
    // Walking down, the second quadrant is on the right.
    const cplx rotated = ray(IndentSide::right);
    // matches up to the truncated far arc
    CHECK(std::abs(rotated - direct.value) < 5e-3);
    CHECK(std::abs(rotated - direct.value) < 0.01 * std::abs(2.0 * PI * I * (std::exp(0.5 * I * pole) / (pole + 2.0 * I))));

    // Switching the detour side picks up the full residue.
    const cplx residue = std::exp(0.5 * I * pole) / (pole + 2.0 * I);
    const cplx east = ray(IndentSide::left);
    CHECK(std::abs((rotated - east) - 2.0 * PI * I * residue) < 1e-9);
}

TEST_CASE("positive real axis rotates onto the upward imaginary ray") {
    auto f = [](cplx k) { return std::exp(0.5 * I * k) / ((k + 2.0 * I) * (k + 2.0 * I)); };
    const double K = 60.0;
    const auto direct = quad::integrate([&](double x) { return f(cplx(x, 0.0)); }, 0.0, K, {},
                                        [](cplx) { return 1.0; });
    Contour c;
    c.add_line(cplx(0.0, 0.0), cplx(0.0, K));
    const auto rotated = quad::integrate_contour(f, c);
    CHECK(std::abs(direct.value - rotated.value) < 5e-3);
}

TEST_CASE("failure carries the best value") {
    quad::QuadOptions opt;
    opt.tol = 1e-16;
    opt.max_panels = 8;
    bool threw = false;
    try {
        quad::integrate([](double x) { return cplx(std::cos(40.0 * x)); }, 0.0, 3.0, opt);
    } catch (const QuadratureFailure& e) {
        threw = true;
        CHECK(std::abs(e.best - std::sin(120.0) / 40.0) < 1e-2);
        CHECK(e.error_estimate > 0.0);
    }
    CHECK(threw);
}

TEST_CASE("node sets reproduce the adaptive value") {
    const double w = 20.0;
    Contour c;
    c.add_line(cplx(0.0, 0.0), cplx(5.0, 0.0));
    const auto ns = quad::make_nodes(c, 6.0, [&](cplx) { return w; });
    cplx acc{}, accg{};
    for (std::size_t i = 0; i < ns.z.size(); ++i) {
        const cplx fv = std::exp(I * w * ns.z[i]);
        acc += ns.w_kronrod[i] * fv;
        accg += ns.w_gauss[i] * fv;
    }
    const cplx exact = (std::exp(I * w * 5.0) - 1.0) / (I * w);
    CHECK(std::abs(acc - exact) < 1e-10);
    CHECK(std::abs(acc - accg) < 1e-8);
}

TEST_CASE("gauss panels integrate oscillations") {
    const double w = 50.0;
    const auto n = quad::gauss_panels(0.0, 10.0, 6.0, [&](double) { return w; });
    cplx acc{};
    for (std::size_t i = 0; i < n.x.size(); ++i) acc += n.w[i] * std::exp(I * w * n.x[i]);
    const cplx exact = (std::exp(I * w * 10.0) - 1.0) / (I * w);
    CHECK(std::abs(acc - exact) < 1e-10);
}
