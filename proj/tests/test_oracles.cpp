#include <doctest.h>

#include <cmath>

#include "unitransform/oracles.hpp"

using namespace ut;
using namespace ut::oracles;

TEST_CASE("free gaussian dispersion matches the closed form") {
    const Potential u0 = make_zero();
    auto q0 = [](double x) { return cplx(std::exp(-(x - 15.0) * (x - 15.0) / 2.0)); };
    auto g0 = [](double) { return cplx{}; };
    CnConfig cfg;
    cfg.dx = 0.01;
    cfg.dt = 0.001;
    cfg.x_max = 30.0;
    const auto xs = linspace(10.0, 20.0, 41);
    const double ts[2] = {0.0, 0.3};
    const auto res = crank_nicolson_halfline(u0, q0, g0, BcKind::dirichlet, cfg, xs, ts);
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const cplx exact = free_gaussian_evolution(xs[i], 0.3, 15.0, 1.0);
        worst = std::max(worst, std::abs(res.field.at(i, 1) - exact));
    }
    CHECK(worst < 1e-4);
    CHECK(res.leakage < 1e-8);
}

TEST_CASE("zero data stays zero") {
    const Potential pot = make_sech2({1.0, 2.0});
    auto zero = [](double) { return cplx{}; };
    CnConfig cfg;
    cfg.dx = 0.05;
    cfg.dt = 0.01;
    cfg.x_max = 20.0;
    const auto xs = linspace(0.0, 10.0, 11);
    const double ts[2] = {0.0, 0.5};
    const auto res = crank_nicolson_halfline(pot, zero, zero, BcKind::dirichlet, cfg, xs, ts);
    for (const auto& v : res.field.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("mass balance against the boundary flux") {
    const Potential pot = make_sech2({1.0, 2.0});
    auto q0 = [](double x) { return cplx(std::exp(-(x - 4.0) * (x - 4.0) / 1.28)); };
    const cplx q00 = q0(0.0);
    auto g0 = [q00](double t) { return q00 * std::exp(-t); };
    CnConfig cfg;
    cfg.dx = 0.01;
    cfg.dt = 0.001;
    cfg.x_max = 30.0;
    const auto xs = linspace(0.0, 10.0, 3);
    const double ts[1] = {0.5};
    const auto res = crank_nicolson_halfline(pot, q0, g0, BcKind::dirichlet, cfg, xs, ts);

    // d/dt int |q|^2 = 2 Im(q_x(0) conj(q(0)))
    double worst = 0.0;
    for (std::size_t n = 10; n + 10 < res.trace_t.size(); n += 37) {
        const double dmdt =
            (res.mass[n + 1] - res.mass[n - 1]) / (res.trace_t[n + 1] - res.trace_t[n - 1]);
        const double flux =
            2.0 * std::imag(res.trace_qx0[n] * std::conj(res.trace_q0[n]));
        worst = std::max(worst, std::abs(dmdt - flux));
    }
    CHECK(worst < 5e-4);
}

TEST_CASE("neumann scheme reproduces the free gaussian") {
    const Potential u0 = make_zero();
    auto q0 = [](double x) { return cplx(std::exp(-(x - 15.0) * (x - 15.0) / 2.0)); };
    auto g1 = [](double) { return cplx{}; };
    CnConfig cfg;
    cfg.dx = 0.01;
    cfg.dt = 0.001;
    cfg.x_max = 30.0;
    const auto xs = linspace(11.0, 19.0, 17);
    const double ts[2] = {0.0, 0.25};
    const auto res = crank_nicolson_halfline(u0, q0, g1, BcKind::neumann, cfg, xs, ts);
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const cplx exact = free_gaussian_evolution(xs[i], 0.25, 15.0, 1.0);
        worst = std::max(worst, std::abs(res.field.at(i, 1) - exact));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("crank-nicolson converges at second order") {
    const Potential pot = make_sech2({1.0, 2.0});
    auto q0 = [](double x) { return cplx(std::exp(-(x - 4.0) * (x - 4.0) / 1.28)); };
    const cplx q00 = q0(0.0);
    auto g0 = [q00](double t) { return q00 * std::exp(-t); };
    const auto xs = linspace(0.5, 9.5, 19);
    const double ts[1] = {0.4};

    auto run = [&](double h) {
        CnConfig cfg;
        cfg.dx = h;
        cfg.dt = h / 10.0;
        cfg.x_max = 30.0;
        return crank_nicolson_halfline(pot, q0, g0, BcKind::dirichlet, cfg, xs, ts).field;
    };
    const auto f1 = run(0.08);
    const auto f2 = run(0.04);
    const auto f3 = run(0.02);
    double e12 = 0.0, e23 = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        e12 = std::max(e12, std::abs(f1.at(i, 0) - f3.at(i, 0)));
        e23 = std::max(e23, std::abs(f2.at(i, 0) - f3.at(i, 0)));
    }
    // halving the grid should cut the discretization error by about 4
    CHECK(e12 / e23 > 3.0);
    CHECK(e12 / e23 < 6.0);
}

TEST_CASE("laplace oracle: zero data gives the zero field") {
    const Potential u0 = make_zero();
    auto zero = [](double) { return 0.0; };
    LaplaceFdConfig cfg;
    cfg.dx = cfg.dy = 0.1;
    cfg.x_max = cfg.y_max = 8.0;
    const auto xs = linspace(0.0, 6.0, 7);
    const auto res = laplace_fd_quarterplane(u0, zero, zero, 0.0, -1.0, 0.0, cfg, xs, xs);
    for (const auto& v : res.field.values) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("laplace oracle: manufactured solution converges at second order") {
    // q* = e^{-x-y}, u = 0, interior source 2 e^{-x-y}
    const Potential u0 = make_zero();
    const double g1c = -1.0, g2c = 0.0, beta = 0.4;
    auto f = [&](double x) { return (-1.0 + g1c) * std::exp(-x); };
    auto g = [&](double y) { return (-1.0 - beta + g2c) * std::exp(-y); };
    auto src = [](double x, double y) { return 2.0 * std::exp(-x - y); };
    const auto xs = linspace(0.5, 5.5, 11);

    auto run = [&](double h) {
        LaplaceFdConfig cfg;
        cfg.dx = cfg.dy = h;
        cfg.x_max = cfg.y_max = 14.0;
        return laplace_fd_quarterplane(u0, f, g, beta, g1c, g2c, cfg, xs, xs, src).field;
    };
    auto err = [&](const FieldSample& fl) {
        double worst = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = 0; j < xs.size(); ++j)
                worst = std::max(worst,
                                 std::abs(fl.at(i, j) - std::exp(-xs[i] - xs[j])));
        return worst;
    };
    const double e1 = err(run(0.2));
    const double e2 = err(run(0.1));
    CHECK(e1 / e2 > 3.0);
    CHECK(e2 < 4e-3);
}

TEST_CASE("laplace oracle is self-consistent under refinement") {
    const Potential u0 = make_zero();
    auto f = [](double x) { return std::exp(-(x - 3.0) * (x - 3.0)); };
    auto g = [](double) { return 0.0; };
    const auto xs = linspace(0.0, 6.0, 13);
    auto run = [&](double h) {
        LaplaceFdConfig cfg;
        cfg.dx = cfg.dy = h;
        cfg.x_max = cfg.y_max = 12.0;
        return laplace_fd_quarterplane(u0, f, g, 0.0, -1.0, 0.0, cfg, xs, xs).field;
    };
    const auto c = run(0.1);
    const auto fine = run(0.05);
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        diff = std::max(diff, std::abs(c.values[i] - fine.values[i]));
        scale = std::max(scale, std::abs(fine.values[i]));
    }
    CHECK(diff < 0.01 * scale);
}

TEST_CASE("eigensolver oracle finds the reflectionless bound state") {
    auto u = [](double x) { return 2.0 / std::pow(std::cosh(x - 2.0), 2); };
    const auto ps = fd_bound_state_ps(u, -25.0, 30.0, 6000);
    REQUIRE(ps.size() == 1);
    CHECK(std::abs(ps[0] - 1.0) < 1e-4);
}
