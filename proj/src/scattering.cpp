#include "unitransform/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "unitransform/errors.hpp"
#include "unitransform/roots.hpp"

namespace ut {

ScatteringEvaluator::ScatteringEvaluator(const JostEvaluator& jost, SpectralBasis basis,
                                         ScatteringOptions opt)
    : jost_(jost), basis_(basis), opt_(opt) {
    if (basis == SpectralBasis::full_line &&
        jost.potential().domain_kind != DomainKind::full_line)
        throw SolverError("full-line scattering basis requires a full-line potential");
}

ScatteringEvaluator::ScatteringEvaluator(const JostEvaluator& jost, ScatteringOptions opt)
    : ScatteringEvaluator(jost, default_basis(jost.potential()), opt) {}

cplx ScatteringEvaluator::wronskian_a(cplx k) const {
    const double x0[1] = {0.0};
    const JostPair m = jost_.psi_factored(k, x0)[0];
    if (basis_ == SpectralBasis::half_line) {
        // W(phi, psi) at x = 0 with phi(0)=1, phi_x(0)=-ik.
        return m.deriv + 2.0 * I * k * m.value;
    }
    const JostPair P = jost_.Phi_factored(k, x0)[0];
    return P.value * m.deriv - P.deriv * m.value + 2.0 * I * k * P.value * m.value;
}

cplx ScatteringEvaluator::wronskian_a_at(cplx k, double x_eval) const {
    const double xv[1] = {x_eval};
    const JostPair m = jost_.psi_factored(k, xv)[0];
    const JostPair w = basis_ == SpectralBasis::half_line ? jost_.phi_factored(k, xv)[0]
                                                          : jost_.Phi_factored(k, xv)[0];
    return w.value * m.deriv - w.deriv * m.value + 2.0 * I * k * w.value * m.value;
}

cplx ScatteringEvaluator::wronskian_b(double k) const { return wronskian_b_at(k, 0.0); }

cplx ScatteringEvaluator::wronskian_b_at(double k, double x_eval) const {
    const double xv[1] = {x_eval};
    const JostPair mm = jost_.psi_factored(cplx(-k, 0.0), xv)[0];
    const JostPair w = basis_ == SpectralBasis::half_line ? jost_.phi_factored(cplx(k, 0.0), xv)[0]
                                                          : jost_.Phi_factored(cplx(k, 0.0), xv)[0];
    return std::exp(-2.0 * I * cplx(k, 0.0) * x_eval) * (mm.value * w.deriv - w.value * mm.deriv);
}

cplx ScatteringEvaluator::a(cplx k) const {
    if (std::abs(k) < opt_.k_zero_cutoff)
        throw NearZeroWavenumber("a(k) requested within the k=0 cutoff");
    return wronskian_a(k) / (2.0 * I * k);
}

cplx ScatteringEvaluator::a_alt(cplx k) const {
    if (std::abs(k) < opt_.k_zero_cutoff)
        throw NearZeroWavenumber("a(k) requested within the k=0 cutoff");
    const double x0[1] = {0.0};
    const JostPair m = jost_.psi_factored(k, x0)[0];
    if (basis_ == SpectralBasis::half_line) {
        const JostPair psi0 = JostEvaluator::unfactor_psi(m, k, 0.0);
        return (psi0.deriv + I * k * psi0.value) / (2.0 * I * k);
    }
    return wronskian_a_at(k, 0.25 * jost_.potential().x_support) / (2.0 * I * k);
}

cplx ScatteringEvaluator::b(double k) const {
    if (std::abs(k) < opt_.k_zero_cutoff)
        throw NearZeroWavenumber("b(k) requested within the k=0 cutoff");
    return wronskian_b(k) / (2.0 * I * cplx(k, 0.0));
}

double ScatteringEvaluator::p_search_max() const {
    const auto& pot = jost_.potential();
    const double lo = pot.domain_kind == DomainKind::full_line ? -pot.x_support : 0.0;
    double umax = 0.0;
    const int n = 4000;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + (pot.x_support - lo) * double(i) / double(n);
        umax = std::max(umax, pot(x));
    }
    return std::sqrt(std::max(0.0, umax)) + 1.0;
}

namespace {

double real_checked(cplx z, const char* what) {
    if (std::abs(std::imag(z)) > 1e-6 * (1.0 + std::abs(z)))
        throw SolverError(std::string(what) + ": expected a real value on the imaginary axis");
    return std::real(z);
}

}  // namespace

std::vector<double> ScatteringEvaluator::find_bound_state_ps() const {
    auto f = [&](double p) { return real_checked(wronskian_a(I * p), "a(ip)"); };
    return roots::bracket_roots(f, opt_.p_min, p_search_max(), opt_.scan_points, 64,
                                opt_.root_tol);
}

std::vector<cplx> ScatteringEvaluator::a_dot_at(std::span<const double> ps) const {
    std::vector<cplx> out;
    out.reserve(ps.size());
    for (double p : ps) {
        const double h = opt_.a_dot_step_rel * p;
        const cplx ap = wronskian_a(I * (p + h)) / (2.0 * I * (I * (p + h)));
        const cplx am = wronskian_a(I * (p - h)) / (2.0 * I * (I * (p - h)));
        out.push_back((ap - am) / (2.0 * I * h));
    }
    return out;
}

std::vector<double> ScatteringEvaluator::psi0_zero_ps() const {
    const double x0[1] = {0.0};
    auto f = [&](double p) {
        return real_checked(jost_.psi_factored(I * p, x0)[0].value, "psi(0,ip)");
    };
    return roots::bracket_roots(f, opt_.p_min, p_search_max(), opt_.scan_points, 64,
                                opt_.root_tol);
}

std::vector<double> ScatteringEvaluator::psix0_zero_ps() const {
    const double x0[1] = {0.0};
    auto f = [&](double p) {
        const JostPair m = jost_.psi_factored(I * p, x0)[0];
        // psi_x(0,ip) = m'(0) - p m(0)
        return real_checked(m.deriv - p * m.value, "psi_x(0,ip)");
    };
    return roots::bracket_roots(f, opt_.p_min, p_search_max(), opt_.scan_points, 64,
                                opt_.root_tol);
}

ScatteringData ScatteringEvaluator::data() const {
    ScatteringData d;
    d.bound_states = find_bound_state_ps();
    d.a_dot = a_dot_at(d.bound_states);
    d.psi0_zeros = psi0_zero_ps();
    d.psix0_zeros = psix0_zero_ps();
    return d;
}

cplx scattering_a(const JostEvaluator& jost, cplx k) {
    return ScatteringEvaluator(jost).a(k);
}

cplx scattering_b(const JostEvaluator& jost, double k) {
    return ScatteringEvaluator(jost).b(k);
}

std::pair<std::vector<double>, std::vector<cplx>> find_bound_states(const JostEvaluator& jost) {
    ScatteringEvaluator ev(jost);
    auto ps = ev.find_bound_state_ps();
    auto ad = ev.a_dot_at(ps);
    return {std::move(ps), std::move(ad)};
}

}  // namespace ut
