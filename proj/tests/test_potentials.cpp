#include <doctest.h>

#include <cmath>

#include "unitransform/errors.hpp"
#include "unitransform/potential.hpp"
#include "unitransform/quadrature.hpp"

using namespace ut;

TEST_CASE("sech2 peak, decay and symmetry") {
    const Potential u = make_sech2({1.0, 2.0});
    CHECK(std::abs(u(2.0) - 2.0) < 1e-14);
    CHECK(std::abs(u(200.0)) < 1e-12);
    for (double d : {0.3, 1.7, 4.4})
        CHECK(std::abs(u(2.0 + d) - u(2.0 - d)) < 1e-12);
    // quiet beyond the located support
    for (double f : {1.0, 1.5, 3.0})
        CHECK(std::abs(u(u.x_support * f)) < u.truncation_tol);
    CHECK(u.x_support > 2.0);
}

TEST_CASE("sech2 parameter validation") {
    CHECK_THROWS_AS(make_sech2({-1.0, 2.0}), ConfigError);
    CHECK_THROWS_AS(make_sech2({1.0, 0.0}), ConfigError);
}

TEST_CASE("moment bound against direct quadrature") {
    const Potential u = make_sech2({1.0, 2.0});
    const double direct =
        std::real(quad::integrate(
                      [&](double x) {
                          return cplx((1.0 + x * x) * std::abs(u(x)));
                      },
                      0.0, u.x_support, {})
                      .value);
    CHECK(u.moment_bound > 0.0);
    CHECK(std::abs(u.moment_bound - direct) < 1e-6 * direct);
    CHECK(std::abs(validate_moment(u) - direct) < 1e-6 * direct);
}

TEST_CASE("zero potential has zero moment") {
    CHECK(validate_moment(make_zero()) == 0.0);
}

TEST_CASE("slowly decaying tail raises DivergentMoment") {
    Potential bad;
    bad.eval = [](double x) { return 1.0 / (1.0 + std::abs(x)); };
    bad.x_support = 10.0;
    bad.domain_kind = DomainKind::half_line;
    CHECK_THROWS_AS(validate_moment(bad), DivergentMoment);
}

TEST_CASE("tabulated potential interpolates at cubic order and is zero outside") {
    std::vector<double> xs, us;
    for (int i = 0; i <= 320; ++i) {
        const double x = 8.0 * i / 320.0;
        xs.push_back(x);
        us.push_back(2.0 / std::pow(std::cosh(x - 2.0), 2));
    }
    const Potential tab = make_tabulated(RealTable(xs, us));
    for (double x : {0.33, 1.91, 3.7, 6.2})
        CHECK(std::abs(tab(x) - 2.0 / std::pow(std::cosh(x - 2.0), 2)) < 2e-6);
    CHECK(tab(9.5) == 0.0);
    CHECK(tab(-0.5) == 0.0);
}

TEST_CASE("full-line support covers both tails") {
    const Potential u = make_sech2({1.0, 4.0}, DomainKind::full_line);
    CHECK(std::abs(u(-u.x_support - 1.0)) < u.truncation_tol);
    CHECK(std::abs(u(u.x_support + 1.0)) < u.truncation_tol);
}
