#include "unitransform/transforms.hpp"

#include <cmath>

#include "unitransform/errors.hpp"
#include "unitransform/quadrature.hpp"

namespace ut {

InitialTransforms initial_transforms(const ComplexFn& q0, double q0_support,
                                     const JostEvaluator& jost, SpectralBasis basis, cplx k,
                                     const TransformOptions& opt) {
    const double rate = std::abs(k) + opt.data_rate;
    const auto nodes = quad::gauss_panels(0.0, q0_support, opt.rad_per_panel,
                                          [&](double) { return rate; });
    const auto m = jost.psi_factored(k, nodes.x);
    const auto w = basis == SpectralBasis::half_line ? jost.phi_factored(k, nodes.x)
                                                     : jost.Phi_factored(k, nodes.x);
    InitialTransforms tr;
    for (std::size_t i = 0; i < nodes.x.size(); ++i) {
        const cplx q = q0(nodes.x[i]);
        const cplx eikx = std::exp(I * k * nodes.x[i]);
        tr.tilde += nodes.w[i] * q * m[i].value * eikx;
        tr.hat += nodes.w[i] * q * w[i].value / eikx;
    }
    return tr;
}

namespace {

cplx time_transform_panelled(const ComplexFn& g, cplx k, double t0, double t1,
                             const TransformOptions& opt) {
    const cplx ik2 = I * k * k;
    if (std::real(ik2) * t1 > std::log(opt.overflow_guard))
        throw OverflowRisk("time transform: e^{ik^2 t} grows beyond guard");
    const double rate = std::abs(std::real(k * k)) + opt.data_rate;
    const auto nodes = quad::gauss_panels(t0, t1, opt.rad_per_panel,
                                          [&](double) { return rate; });
    cplx acc{};
    for (std::size_t i = 0; i < nodes.x.size(); ++i)
        acc += nodes.w[i] * std::exp(ik2 * nodes.x[i]) * g(nodes.x[i]);
    return acc;
}

}  // namespace

cplx time_transform(const ComplexFn& g, cplx k, double t, const TransformOptions& opt) {
    if (t <= 0.0) return {};
    return time_transform_panelled(g, k, 0.0, t, opt);
}

cplx time_transform_inf(const ComplexFn& g, cplx k, double decay_horizon,
                        const TransformOptions& opt) {
    return time_transform_panelled(g, k, 0.0, decay_horizon, opt);
}

}  // namespace ut
