#include "unitransform/jost.hpp"

#include <algorithm>
#include <cmath>

#include "unitransform/errors.hpp"

namespace ut {

JostEvaluator::JostEvaluator(Potential potential, double ode_rel_tol)
    : potential_(std::move(potential)) {
    opt_.rel_tol = ode_rel_tol;
    opt_.abs_tol = 1e-2 * ode_rel_tol;
}

std::vector<JostPair> JostEvaluator::psi_factored(cplx k, std::span<const double> xs) const {
    if (std::imag(k) < -1e-12)
        throw SolverError("psi requires Im k >= 0");
    std::vector<JostPair> out(xs.size());
    if (xs.empty()) return out;
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] < xs[i - 1]) throw SolverError("sample points must ascend");

    const double x_start = std::max(potential_.x_support, xs.back());
    // m'' + 2ik m' + u m = 0, m(x_start) = 1, m'(x_start) = 0.
    const auto& u = potential_.eval;
    ode::Rhs2 rhs = [&u, k](double x, const ode::State2& y, ode::State2& d) {
        d[0] = y[1];
        d[1] = -2.0 * I * k * y[1] - u(x) * y[0];
    };
    // Integrate inward; samples must descend, so reverse.
    std::vector<double> rev(xs.rbegin(), xs.rend());
    const std::size_t n = xs.size();
    ode::integrate(rhs, x_start, xs.front(), {1.0, 0.0}, opt_, rev,
                   [&](std::size_t i, const ode::State2& y) {
                       out[n - 1 - i] = {y[0], y[1]};
                   });
    return out;
}

namespace {

// Shared by phi (from 0) and Phi (from -x_support): w'' - 2ik w' + u w = 0.
std::vector<JostPair> outward_factored(const Potential& potential, const ode::Options& opt, cplx k,
                                       double x_start, std::span<const double> xs) {
    std::vector<JostPair> out(xs.size());
    if (xs.empty()) return out;
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] < xs[i - 1]) throw SolverError("sample points must ascend");
    if (xs.front() < x_start - 1e-12) throw SolverError("sample point before initial point");

    const auto& u = potential.eval;
    ode::Rhs2 rhs = [&u, k](double x, const ode::State2& y, ode::State2& d) {
        d[0] = y[1];
        d[1] = 2.0 * I * k * y[1] - u(x) * y[0];
    };
    ode::integrate(rhs, x_start, std::max(xs.back(), x_start), {1.0, 0.0}, opt, xs,
                   [&](std::size_t i, const ode::State2& y) {
                       out[i] = {y[0], y[1]};
                   });
    return out;
}

}  // namespace

std::vector<JostPair> JostEvaluator::phi_factored(cplx k, std::span<const double> xs) const {
    return outward_factored(potential_, opt_, k, 0.0, xs);
}

std::vector<JostPair> JostEvaluator::Phi_factored(cplx k, std::span<const double> xs) const {
    if (potential_.domain_kind != DomainKind::full_line)
        throw SolverError("Phi requires a full-line potential");
    return outward_factored(potential_, opt_, k, -potential_.x_support, xs);
}

JostPair JostEvaluator::unfactor_psi(const JostPair& m, cplx k, double x) {
    const cplx e = std::exp(I * k * x);
    return {m.value * e, (m.deriv + I * k * m.value) * e};
}

JostPair JostEvaluator::unfactor_phi(const JostPair& n, cplx k, double x) {
    const cplx e = std::exp(-I * k * x);
    return {n.value * e, (n.deriv - I * k * n.value) * e};
}

std::vector<JostPair> JostEvaluator::psi(cplx k, std::span<const double> xs) const {
    auto out = psi_factored(k, xs);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = unfactor_psi(out[i], k, xs[i]);
    return out;
}

std::vector<JostPair> JostEvaluator::phi(cplx k, std::span<const double> xs) const {
    auto out = phi_factored(k, xs);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = unfactor_phi(out[i], k, xs[i]);
    return out;
}

std::vector<JostPair> JostEvaluator::Phi(cplx k, std::span<const double> xs) const {
    auto out = Phi_factored(k, xs);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = unfactor_phi(out[i], k, xs[i]);
    return out;
}

JostPair JostEvaluator::psi_at(cplx k, double x) const {
    const double xv[1] = {x};
    return psi(k, xv)[0];
}

JostPair JostEvaluator::phi_at(cplx k, double x) const {
    const double xv[1] = {x};
    return phi(k, xv)[0];
}

JostPair JostEvaluator::Phi_at(cplx k, double x) const {
    const double xv[1] = {x};
    return Phi(k, xv)[0];
}

}  // namespace ut
