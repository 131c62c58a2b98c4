#include <doctest.h>

#include <cmath>

#include "unitransform/errors.hpp"
#include "unitransform/laplace.hpp"
#include "unitransform/oracles.hpp"
#include "unitransform/quadrature.hpp"
#include "unitransform/table.hpp"

using namespace ut;

namespace {

double bump3(double x) { return std::exp(-(x - 3.0) * (x - 3.0)); }

LaplaceData gaussian_data(double beta = 0.0, double gamma1 = -1.0, double gamma2 = 0.0) {
    LaplaceData d;
    d.f = bump3;
    d.g = [](double) { return 0.0; };
    d.f_support = 10.0;
    d.g_support = 2.0;
    d.beta = beta;
    d.gamma1 = gamma1;
    d.gamma2 = gamma2;
    return d;
}

Potential shallow_repulsive() {
    return make_from_callable(
        [](double x) { return -0.2 / std::pow(std::cosh(x - 2.0), 2); },
        DomainKind::half_line);
}

}  // namespace

TEST_CASE("free spectral functions reduce to closed forms") {
    LaplaceData d = gaussian_data(0.4, -1.0, 0.3);
    d.f = [](double) { return 0.0; };
    LaplaceSolver solver(make_zero(), d);
    for (double s : {0.5, 1.7, 4.0}) {
        const cplx k(0.0, s);
        CHECK(std::abs(solver.H(k)) < 1e-12);
        CHECK(std::abs(solver.F(k)) < 1e-12);
        CHECK(std::abs(solver.N(cplx(s, 0.0))) < 1e-12);
        // D(k) = ik + gamma2 - beta k from psi = e^{ikx}
        CHECK(std::abs(solver.D(k) - (I * k + 0.3 - 0.4 * k)) < 1e-9);
        CHECK(std::abs(solver.d_small(k) - (-I * k + 0.3 - 0.4 * k)) < 1e-12);
    }
}

TEST_CASE("free jump ratio for beta = 0, gamma2 = 0") {
    LaplaceSolver solver(make_zero(), gaussian_data());
    for (double s : {0.4, 1.3, 6.0}) {
        const cplx k(0.0, s);
        CHECK(std::abs(solver.J(k) - (k - 1.0) / (k + 1.0)) < 1e-9);
    }
}

TEST_CASE("H against a fine-grid quadrature oracle") {
    LaplaceSolver solver(shallow_repulsive(), gaussian_data());
    const cplx k(0.0, 1.3);
    const int n = 40000;
    const double h = 10.0 / n;
    std::vector<double> xs(n + 1);
    for (int i = 0; i <= n; ++i) xs[i] = h * i;
    const auto psis = solver.jost().psi(k, xs);
    cplx ref{};
    for (int i = 0; i <= n; ++i)
        ref += h * ((i == 0 || i == n) ? 0.5 : 1.0) * bump3(xs[i]) * psis[i].value;
    CHECK(std::abs(solver.H(k) - ref) < 1e-8);
}

TEST_CASE("attractive wells are rejected") {
    CHECK_THROWS_AS(LaplaceSolver(make_sech2({1.0, 2.0}), gaussian_data()),
                    BoundStatePresent);
}

TEST_CASE("algebraic-path preconditions") {
    LaplaceSolver bad_gamma(make_zero(), gaussian_data(0.0, +1.0, 0.0));
    const auto xs = linspace(0.0, 2.0, 3);
    CHECK_THROWS_AS(bad_gamma.solve_algebraic(xs, xs), PoleOnContour);
    LaplaceSolver oblique(make_zero(), gaussian_data(0.5, -1.0, 0.0));
    CHECK_THROWS_AS(oblique.solve_algebraic(xs, xs), ConfigError);
}

TEST_CASE("zero data solve is identically zero") {
    LaplaceData d = gaussian_data();
    d.f = [](double) { return 0.0; };
    LaplaceSolver solver(make_zero(), d);
    const auto xs = linspace(0.0, 4.0, 5);
    const auto f = solver.solve_algebraic(xs, xs);
    CHECK(sup_norm(f.values) < 1e-12);
}

TEST_CASE("free algebraic solve against the finite-difference oracle") {
    LaplaceSolver solver(make_zero(), gaussian_data());
    const auto xs = linspace(0.0, 6.0, 25);
    const auto spectral = solver.solve_algebraic(xs, xs);
    CHECK(max_abs_imag(spectral) < 1e-8);

    oracles::LaplaceFdConfig oc;
    oc.dx = oc.dy = 0.025;
    oc.x_max = oc.y_max = 14.0;
    const auto oracle = oracles::laplace_fd_quarterplane(
        make_zero(), bump3, [](double) { return 0.0; }, 0.0, -1.0, 0.0, oc, xs, xs);
    CHECK(field_rel_l2(spectral, oracle.field) < 1e-2);
}

TEST_CASE("shallow repulsive well against the finite-difference oracle") {
    const Potential pot = shallow_repulsive();
    LaplaceSolver solver(pot, gaussian_data());
    const auto xs = linspace(0.0, 6.0, 19);
    const auto spectral = solver.solve_algebraic(xs, xs);
    CHECK(max_abs_imag(spectral) < 1e-8);

    oracles::LaplaceFdConfig oc;
    oc.dx = oc.dy = 0.025;
    oc.x_max = oc.y_max = 14.0;
    const auto oracle = oracles::laplace_fd_quarterplane(
        pot, bump3, [](double) { return 0.0; }, 0.0, -1.0, 0.0, oc, xs, xs);
    CHECK(field_rel_l2(spectral, oracle.field) < 1e-2);
}

TEST_CASE("boundary conditions are recovered from the algebraic field") {
    LaplaceSolver solver(make_zero(), gaussian_data());
    const double h = 0.02;
    const auto xs = linspace(0.5, 5.5, 11);
    const double ys[3] = {0.0, h, 2.0 * h};
    const auto f = solver.solve_algebraic(xs, ys);
    double worst = 0.0, fmax = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double qy = std::real(-3.0 * f.at(i, 0) + 4.0 * f.at(i, 1) - f.at(i, 2)) /
                          (2.0 * h);
        const double resid = qy - std::real(f.at(i, 0)) - bump3(xs[i]);
        worst = std::max(worst, std::abs(resid));
        fmax = std::max(fmax, std::abs(bump3(xs[i])));
    }
    CHECK(worst < 1e-2 * fmax);

    const double xs2[3] = {0.0, h, 2.0 * h};
    const auto ys2 = linspace(0.5, 5.5, 11);
    const auto f2 = solver.solve_algebraic(xs2, ys2);
    double worst2 = 0.0, scale2 = 0.0;
    for (std::size_t j = 0; j < ys2.size(); ++j) {
        const double qx = std::real(-3.0 * f2.at(0, j) + 4.0 * f2.at(1, j) - f2.at(2, j)) /
                          (2.0 * h);
        worst2 = std::max(worst2, std::abs(qx));
        scale2 = std::max(scale2, std::abs(std::real(f2.at(0, j))));
    }
    CHECK(worst2 < 2e-2 * std::max(1.0, scale2));
}

TEST_CASE("pde residual of the algebraic field") {
    LaplaceSolver solver(make_zero(), gaussian_data());
    const auto xs = linspace(1.0, 5.0, 33);
    const auto f = solver.solve_algebraic(xs, xs);
    const double res = laplace_pde_residual(f, make_zero());
    const double scale = sup_norm(f.values);
    CHECK(res < 1e-1 * std::max(1.0, scale));  // coarse-grid differences
    const auto xs2 = linspace(1.0, 5.0, 65);
    const auto f2 = solver.solve_algebraic(xs2, xs2);
    CHECK(res / laplace_pde_residual(f2, make_zero()) > 2.5);
}

TEST_CASE("representation round trip from oracle spectral data") {
    const Potential pot = make_zero();
    oracles::LaplaceFdConfig oc;
    oc.dx = oc.dy = 0.02;
    oc.x_max = oc.y_max = 16.0;
    const auto xs = linspace(0.4, 5.0, 9);
    const auto oracle = oracles::laplace_fd_quarterplane(
        pot, bump3, [](double) { return 0.0; }, 0.0, -1.0, 0.0, oc, xs, xs);

    RealTable qy0(oracle.trace_x, oracle.q_y0);
    RealTable qx0(oracle.trace_y, oracle.q_x0);
    LaplaceSolver solver(pot, gaussian_data());
    auto g0k = [&](cplx k) {
        const auto n = quad::gauss_panels(0.0, 16.0, 6.0, [&](double) {
            return std::abs(std::imag(k)) + 2.0;
        });
        cplx acc{};
        for (std::size_t i = 0; i < n.x.size(); ++i)
            acc += n.w[i] * std::exp(k * n.x[i]) * qx0(n.x[i]);
        return acc;
    };
    auto rho = [&](cplx k) {
        return solver.rho_from_trace([&](double x) { return qy0(x); }, 16.0, g0k, k);
    };
    const auto rep = solver.representation_evaluate(rho, g0k, xs, xs);
    CHECK(max_abs_imag(rep) < 1e-6);
    CHECK(field_rel_l2(rep, oracle.field) < 1e-2);
}

TEST_CASE("global relations on oracle traces") {
    const Potential pot = make_zero();
    oracles::LaplaceFdConfig oc;
    oc.dx = oc.dy = 0.025;
    oc.x_max = oc.y_max = 14.0;
    const auto xs = linspace(0.0, 6.0, 4);
    const auto oracle = oracles::laplace_fd_quarterplane(
        pot, bump3, [](double) { return 0.0; }, 0.0, -1.0, 0.0, oc, xs, xs);
    RealTable qy0(oracle.trace_x, oracle.q_y0);
    RealTable qyy0(oracle.trace_x, oracle.qy_y0);
    RealTable qx0(oracle.trace_y, oracle.q_x0);
    RealTable qxx0(oracle.trace_y, oracle.qx_x0);

    LaplaceSolver solver(pot, gaussian_data());
    const std::vector<cplx> k_phi = {{-0.4, -0.5}, {-1.1, -0.8}, {-2.6, -0.4}};
    const std::vector<cplx> k_psi = {{-0.5, 0.6}, {-1.2, 1.1}, {-0.8, 2.2}};
    const auto [r_phi, r_psi] = solver.global_relation_residual(
        [&](double x) { return qy0(x); }, [&](double x) { return qyy0(x); },
        [&](double y) { return qx0(y); }, [&](double y) { return qxx0(y); }, 14.0, 14.0,
        k_phi, k_psi);
    CHECK(r_phi < 1e-3);
    CHECK(r_psi < 1e-3);

    auto zero = [](double) { return 0.0; };
    const auto [z_phi, z_psi] =
        solver.global_relation_residual(zero, zero, zero, zero, 4.0, 4.0, k_phi, k_psi);
    CHECK(z_phi == 0.0);
    CHECK(z_psi == 0.0);
}

TEST_CASE("jump relation certified by the algebraic path") {
    LaplaceSolver solver(make_zero(), gaussian_data());
    const auto xs_tr = linspace(0.0, 40.0, 401);
    const double y0[1] = {0.0};
    const auto sol = solver.solve_algebraic(xs_tr, y0);
    std::vector<double> tr(xs_tr.size());
    for (std::size_t i = 0; i < xs_tr.size(); ++i) tr[i] = std::real(sol.at(i, 0));
    RealTable qy0(xs_tr, tr);
    auto candidate = [&](cplx k) {
        return solver.g0k_from_y0_trace([&](double x) { return qy0(x); }, 40.0, k);
    };
    const std::vector<double> ss = {0.3, 0.8, 1.7, 3.2, 6.0};
    CHECK(solver.rh_jump_residual(candidate, std::real(sol.at(0, 0)), ss) < 1e-6);
}

TEST_CASE("jump residual vanishes for zero data") {
    LaplaceData d = gaussian_data();
    d.f = [](double) { return 0.0; };
    LaplaceSolver solver(make_zero(), d);
    auto zero = [](cplx) { return cplx{}; };
    const std::vector<double> ss = {0.5, 2.0};
    CHECK(solver.rh_jump_residual(zero, 0.0, ss) == 0.0);
}

TEST_CASE("oblique-condition jump residual from oracle traces") {
    const double beta = 0.6;
    const Potential pot = make_zero();
    oracles::LaplaceFdConfig oc;
    oc.dx = oc.dy = 0.025;
    oc.x_max = oc.y_max = 14.0;
    const auto xs = linspace(0.0, 4.0, 3);
    const auto oracle = oracles::laplace_fd_quarterplane(
        pot, bump3, [](double) { return 0.0; }, beta, -1.0, 0.0, oc, xs, xs);
    RealTable qy0(oracle.trace_x, oracle.q_y0);
    const double q00 = oracle.q_y0.front();
    LaplaceSolver solver(pot, gaussian_data(beta));
    auto candidate = [&](cplx k) {
        return solver.g0k_from_y0_trace([&](double x) { return qy0(x); }, 14.0, k, q00);
    };
    const std::vector<double> ss = {0.4, 1.0, 2.2};
    CHECK(solver.rh_jump_residual(candidate, q00, ss) < 1e-2);
}

TEST_CASE("two-sided boundary transform closed form") {
    LaplaceSolver solver(make_zero(), gaussian_data());
    auto trace = [](double y) { return std::exp(-y); };
    for (double k : {2.0, 3.5}) {
        for (double y : {0.7, 1.9}) {
            const cplx v = solver.boundary_two_sided_transform(trace, 40.0, y, cplx(k, 0.0));
            const double exact =
                (std::exp(-y) - std::exp(-k * y)) / (k - 1.0) + std::exp(-y) / (k + 1.0);
            CHECK(std::abs(v - exact) < 1e-9);
        }
    }
}

TEST_CASE("sectionally analytic pieces: equation defect, jump, decay") {
    SUBCASE("zero field gives zero mu") {
        LaplaceSolver solver(make_zero(), gaussian_data());
        auto zero_field = [](double, double) { return 0.0; };
        const std::vector<cplx> ks = {cplx(0.8, 0.4)};
        const auto rep = solver.mu_functions_check(zero_field, 8.0, 8.0, ks);
        CHECK(rep.ode_residual < 1e-10);
        CHECK(rep.jump_residual < 1e-10);
    }
    SUBCASE("algebraic-case field satisfies the x-equation") {
        const Potential pot = shallow_repulsive();
        LaplaceSolver s2(pot, gaussian_data());
        const auto xs = linspace(0.0, 12.0, 61);
        const auto f = s2.solve_algebraic(xs, xs);
        std::vector<ComplexTable> rows;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::vector<cplx> row(xs.size());
            for (std::size_t j = 0; j < xs.size(); ++j) row[j] = f.at(i, j);
            rows.emplace_back(xs, row);
        }
        auto field = [&](double x, double y) {
            std::vector<cplx> vv(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) vv[i] = rows[i](y);
            return std::real(ComplexTable(std::vector<double>(xs), std::move(vv))(x));
        };
        const std::vector<cplx> ks = {cplx(0.9, 0.5), cplx(0.3, 1.1)};
        const auto rep = s2.mu_functions_check(field, 12.0, 12.0, ks);
        CHECK(rep.ode_residual < 1e-2);
        CHECK(rep.jump_residual < 1e-3);
        CHECK(rep.decay_bound < 10.0);
    }
}

TEST_CASE("discarded contour terms are small with oracle data") {
    const Potential pot = make_zero();
    oracles::LaplaceFdConfig oc;
    oc.dx = oc.dy = 0.05;
    oc.x_max = oc.y_max = 14.0;
    const auto xs = linspace(0.0, 4.0, 3);
    const auto oracle = oracles::laplace_fd_quarterplane(
        pot, bump3, [](double) { return 0.0; }, 0.0, -1.0, 0.0, oc, xs, xs);
    RealTable qx0(oracle.trace_y, oracle.q_x0);
    LaplaceSolver solver(pot, gaussian_data());
    auto g0k = [&](cplx k) {
        const auto n = quad::gauss_panels(0.0, 14.0, 6.0, [&](double) {
            return std::abs(std::imag(k)) + std::abs(std::real(k)) + 2.0;
        });
        cplx acc{};
        for (std::size_t i = 0; i < n.x.size(); ++i)
            acc += n.w[i] * std::exp(k * n.x[i]) * qx0(n.x[i]);
        return acc;
    };
    const auto [m1, m2] = solver.discarded_contour_magnitudes(g0k, 1.5, 1.5, 60.0);
    CHECK(m1 < 1e-3);
    CHECK(m2 < 1e-3);
}
