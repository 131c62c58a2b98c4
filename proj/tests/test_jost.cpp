#include <doctest.h>

#include <cmath>

#include "support/volterra_oracle.hpp"
#include "unitransform/jost.hpp"

using namespace ut;

namespace {

cplx sech2_psi_ref(double x, cplx k, double p, double x0) {
    return (k + I * p * std::tanh(p * (x - x0))) / (k + I * p) * std::exp(I * k * x);
}

double gaussian_u(double x) { return std::exp(-(x - 3.0) * (x - 3.0)); }

}  // namespace

TEST_CASE("zero potential gives plane waves") {
    JostEvaluator jost(make_zero());
    for (cplx k : {cplx(1.0, 0.0), cplx(0.3, 0.9), cplx(4.0, 2.0)}) {
        const auto p = jost.psi_at(k, 1.7);
        CHECK(std::abs(p.value - std::exp(I * k * 1.7)) < 1e-10);
        CHECK(std::abs(p.deriv - I * k * std::exp(I * k * 1.7)) < 1e-10);
    }
    for (cplx k : {cplx(2.0, 0.0), cplx(1.0, -0.7), cplx(0.5, 1.5)}) {
        const auto p = jost.phi_at(k, 2.4);
        CHECK(std::abs(p.value - std::exp(-I * k * 2.4)) < 1e-10);
        CHECK(std::abs(p.deriv + I * k * std::exp(-I * k * 2.4)) < 1e-10);
    }
}

TEST_CASE("phi initial condition holds exactly") {
    JostEvaluator jost(make_gaussian(1.0, 3.0, 1.0));
    for (cplx k : {cplx(0.7, 0.0), cplx(2.0, 1.0), cplx(0.0, 1.3)}) {
        const auto p = jost.phi_at(k, 0.0);
        CHECK(std::abs(p.value - 1.0) < 1e-14);
        CHECK(std::abs(p.deriv + I * k) < 1e-14);
    }
}

TEST_CASE("reflectionless closed form for psi") {
    JostEvaluator jost(make_sech2({1.0, 2.0}, DomainKind::full_line));
    for (double x : {0.0, 0.9, 2.0, 4.6, 9.3}) {
        for (double kr : {0.1, 0.9, 3.2, 10.0}) {
            const cplx k(kr, 0.0);
            const auto p = jost.psi_at(k, x);
            CHECK(std::abs(p.value - sech2_psi_ref(x, k, 1.0, 2.0)) < 1e-8);
        }
    }
}

TEST_CASE("full-line Phi at the bound-state wavenumber") {
    JostEvaluator jost(make_sech2({1.0, 2.0}, DomainKind::full_line));
    for (double x : {0.0, 1.1, 2.0, 3.8}) {
        const auto P = jost.Phi_at(I, x);
        const cplx ref = std::exp(2.0) / (2.0 * std::cosh(x - 2.0));
        CHECK(std::abs(P.value - ref) < 1e-8);
    }
}

TEST_CASE("Phi matches the conjugate relation for the reflectionless well") {
    JostEvaluator jost(make_sech2({1.0, 2.0}, DomainKind::full_line));
    for (double kr : {0.4, 1.3, 5.0}) {
        const cplx k(kr, 0.0);
        const cplx A = (k - I) / (k + I);
        for (double x : {0.5, 2.7}) {
            const cplx Phi = jost.Phi_at(k, x).value;
            const cplx psi = jost.psi_at(k, x).value;
            CHECK(std::abs(Phi - A * std::conj(psi)) < 1e-8);
        }
    }
}

TEST_CASE("gaussian potential matches the integral-equation oracle") {
    JostEvaluator jost(make_gaussian(1.0, 3.0, 1.0));
    // frozen values from the fine-grid fixed-point iteration below
    const cplx psi_ref(0.771524304472, -0.572457529537);
    const cplx psix_ref(0.793858228452, 0.707106537766);
    const cplx phi_ref(7.884089775828, 5.099648985334);

    const auto o_psi = volterra::psi(gaussian_u, 0.0, cplx(1.0, 0.0), 12.0, 24000);
    CHECK(std::abs(o_psi.value - psi_ref) < 1e-9);
    const auto p = jost.psi_at(cplx(1.0, 0.0), 0.0);
    CHECK(std::abs(p.value - psi_ref) < 5e-7);
    CHECK(std::abs(p.deriv - psix_ref) < 5e-6);

    const auto o_phi = volterra::phi(gaussian_u, 5.0, cplx(1.0, 0.5), 20000);
    CHECK(std::abs(o_phi.value - phi_ref) < 1e-7);
    const auto ph = jost.phi_at(cplx(1.0, 0.5), 5.0);
    CHECK(std::abs(ph.value - phi_ref) < 5e-6 * std::abs(phi_ref));
}

TEST_CASE("psi e^{-ikx} stays bounded in the upper half-plane") {
    JostEvaluator jost(make_gaussian(1.0, 3.0, 1.0));
    const double bound = std::exp(jost.potential().moment_bound);
    for (double ki : {0.2, 0.8, 2.0}) {
        double prev = 0.0;
        for (double x : {0.0, 1.0, 3.0, 6.0, 9.0}) {
            const double m = std::abs(jost.psi_factored(cplx(0.5, ki), {&x, 1})[0].value);
            CHECK(m < 10.0 * bound);
            (void)prev;
        }
    }
}

TEST_CASE("batched sweep equals pointwise evaluation") {
    JostEvaluator jost(make_sech2({1.0, 2.0}));
    const cplx k(1.4, 0.3);
    const std::vector<double> xs = {0.0, 0.7, 1.9, 4.2, 8.8};
    const auto batch = jost.psi(k, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto single = jost.psi_at(k, xs[i]);
        CHECK(std::abs(batch[i].value - single.value) < 1e-11);
        CHECK(std::abs(batch[i].deriv - single.deriv) < 1e-11);
    }
}
