#include "unitransform/laplace.hpp"

#include <algorithm>
#include <cmath>

#include "unitransform/errors.hpp"
#include "unitransform/quadrature.hpp"
#include "unitransform/scattering.hpp"

namespace ut {

namespace {

struct BoundaryVals {
    cplx psi0, psix0;
    cplx W;  // 2ik a(k)
};

}  // namespace

struct LaplaceSolver::Impl {
    Potential potential;
    LaplaceData data;
    LaplaceOptions opt;
    JostEvaluator jost;
    std::vector<double> psi0_zeros;

    Impl(Potential pot, LaplaceData d, LaplaceOptions o)
        : potential(std::move(pot)), data(std::move(d)), opt(o), jost(potential, o.ode_tol) {
        if (potential.domain_kind != DomainKind::half_line)
            throw ConfigError("the quarter-plane solver uses the half-line spectral pair");
        ScatteringEvaluator scat(jost, SpectralBasis::half_line);
        if (!scat.find_bound_state_ps().empty())
            throw BoundStatePresent(
                "a(k) has zeros in the upper half-plane; the representation assumes none");
        psi0_zeros = scat.psi0_zero_ps();
    }

    BoundaryVals boundary(cplx k) const {
        const double x0[1] = {0.0};
        const JostPair m = jost.psi_factored(k, x0)[0];
        BoundaryVals bv;
        bv.psi0 = m.value;
        bv.psix0 = m.deriv + I * k * m.value;
        bv.W = bv.psix0 + I * k * bv.psi0;
        return bv;
    }

    // int_0^inf e^{ky} g(y) dy, convergent for Re k <= 0.
    cplx g_transform(cplx k) const {
        const double rate = std::abs(std::imag(k)) + 2.0;
        const auto n = quad::gauss_panels(0.0, data.g_support, opt.rad_per_panel,
                                          [&](double) { return rate; });
        cplx acc{};
        for (std::size_t i = 0; i < n.x.size(); ++i)
            acc += n.w[i] * std::exp(k * n.x[i]) * data.g(n.x[i]);
        return acc;
    }

    // int_0^inf f psi dx and int_0^inf f phi dx.
    void f_transforms(cplx k, cplx& f_psi, cplx& f_phi, bool want_phi) const {
        const double rate = std::abs(k) + 2.0;
        const auto n = quad::gauss_panels(0.0, data.f_support, opt.rad_per_panel,
                                          [&](double) { return rate; });
        const auto m = jost.psi_factored(k, n.x);
        f_psi = cplx{};
        for (std::size_t i = 0; i < n.x.size(); ++i)
            f_psi += n.w[i] * data.f(n.x[i]) * m[i].value * std::exp(I * k * n.x[i]);
        f_phi = cplx{};
        if (want_phi) {
            const auto ph = jost.phi_factored(k, n.x);
            for (std::size_t i = 0; i < n.x.size(); ++i)
                f_phi += n.w[i] * data.f(n.x[i]) * ph[i].value * std::exp(-I * k * n.x[i]);
        }
    }

    cplx Hval(cplx k) const {
        cplx f_psi, f_phi;
        f_transforms(k, f_psi, f_phi, false);
        return f_psi + boundary(k).psi0 * g_transform(k);
    }

    cplx Dval(cplx k, const BoundaryVals& bv) const {
        return bv.psix0 + (data.gamma2 - data.beta * k) * bv.psi0;
    }

    cplx Fval(cplx k) const {
        const BoundaryVals bv = boundary(k);
        const cplx D = Dval(k, bv);
        const cplx H = Hval(k);
        if (std::abs(std::real(k)) < 1e-12 * (1.0 + std::abs(k))) {
            // On the imaginary axis -conj(k) = k, so the reflected term is a
            // plain conjugate; assemble the cancellation-free form.
            const double s = std::imag(k);
            const cplx num = 2.0 * I * (s * std::real(H) - data.gamma1 * std::imag(H));
            return num / ((k - data.gamma1) * D);
        }
        const cplx Hrefl = std::conj(Hval(-std::conj(k)));
        return ((k - data.gamma1) * H + (k + data.gamma1) * Hrefl) / ((k - data.gamma1) * D);
    }

    cplx Nval(cplx k) const {
        const BoundaryVals bv = boundary(k);
        cplx f_psi, f_phi;
        f_transforms(k, f_psi, f_phi, true);
        // 1/(i a(k)) = 2k / W
        return -(bv.psi0 * f_phi - f_psi) * (2.0 * k / bv.W) / ((k - data.gamma1) * bv.psi0);
    }

    double choose_k_real() const {
        if (opt.k_max > 0.0) return opt.k_max;
        double peak = 1e-300;
        double K = opt.k_max_floor;
        for (; K <= opt.k_max_cap; K *= 1.4) {
            const double edge = std::abs(Nval(cplx(K, 0.0)));
            for (double fr : {0.05, 0.3, 0.6})
                peak = std::max(peak, std::abs(Nval(cplx(K * fr, 0.0))));
            if (edge < opt.k_tail_ratio * peak) break;
        }
        return std::min(K, opt.k_max_cap);
    }

    double choose_k_imag() const {
        if (opt.k_max > 0.0) return opt.k_max;
        double peak = 1e-300;
        double K = opt.k_max_floor;
        for (; K <= opt.k_max_cap; K *= 1.4) {
            const double edge = std::abs(Fval(I * K)) * K;
            for (double fr : {0.05, 0.3, 0.6})
                peak = std::max(peak, std::abs(Fval(I * K * fr)));
            if (edge < 1e-6 * peak) break;
        }
        return std::min(K, opt.k_max_cap);
    }
};

LaplaceSolver::LaplaceSolver(Potential potential, LaplaceData data, LaplaceOptions opt)
    : impl_(std::make_unique<Impl>(std::move(potential), std::move(data), opt)) {}

LaplaceSolver::~LaplaceSolver() = default;

const JostEvaluator& LaplaceSolver::jost() const { return impl_->jost; }
const LaplaceOptions& LaplaceSolver::options() const { return impl_->opt; }
const LaplaceData& LaplaceSolver::data() const { return impl_->data; }

cplx LaplaceSolver::H(cplx k) const { return impl_->Hval(k); }
cplx LaplaceSolver::F(cplx k) const { return impl_->Fval(k); }
cplx LaplaceSolver::N(cplx k) const { return impl_->Nval(k); }

cplx LaplaceSolver::D(cplx k) const { return impl_->Dval(k, impl_->boundary(k)); }

cplx LaplaceSolver::J(cplx k) const {
    const BoundaryVals bv = impl_->boundary(k);
    const auto& d = impl_->data;
    return (k + d.gamma1) / (k - d.gamma1) *
           (bv.psix0 + (d.gamma2 + d.beta * k) * bv.psi0) /
           (bv.psix0 + (d.gamma2 - d.beta * k) * bv.psi0);
}

cplx LaplaceSolver::d_small(cplx k) const {
    return -I * k + (impl_->data.gamma2 - impl_->data.beta * k);
}

cplx LaplaceSolver::h_small(cplx k) const {
    cplx f_psi, f_phi;
    impl_->f_transforms(k, f_psi, f_phi, true);
    return f_phi + impl_->g_transform(k);
}

FieldSample LaplaceSolver::solve_algebraic(std::span<const double> xs,
                                           std::span<const double> ys) const {
    const auto& d = impl_->data;
    const auto& opt = impl_->opt;
    if (d.beta != 0.0) throw ConfigError("the algebraic path requires beta = 0");
    if (d.gamma1 >= 0.0)
        throw PoleOnContour("gamma1 >= 0 puts the reflection pole on the contour");
    if (!impl_->psi0_zeros.empty())
        throw PsiZeroAtOrigin("psi(0, .) vanishes on the positive imaginary axis");

    FieldSample field;
    field.axis1.assign(xs.begin(), xs.end());
    field.axis2.assign(ys.begin(), ys.end());
    field.values.assign(xs.size() * ys.size(), cplx{});

    const double x_max = xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
    const double Kr = impl_->choose_k_real();
    const double Ki = impl_->choose_k_imag();

    // Real-axis pieces: -int_0^inf e^{-ky} psi N dk and the reflected
    // conjugate partner over the negative axis.
    {
        quad::Contour c;
        c.add_line(cplx(-Kr, 0.0), cplx(0.0, 0.0));
        c.add_line(cplx(0.0, 0.0), cplx(Kr, 0.0));
        const auto ns = quad::make_nodes(c, opt.rad_per_panel,
                                         [&](cplx) { return x_max + d.f_support + 2.0; });
        std::vector<std::vector<cplx>> psi_rows(ns.z.size());
        std::vector<cplx> Nv(ns.z.size());
        parallel_for(ns.z.size(), opt.threads, [&](std::size_t i) {
            const cplx k = ns.z[i];
            const auto m = impl_->jost.psi_factored(k, xs);
            psi_rows[i].resize(xs.size());
            for (std::size_t ix = 0; ix < xs.size(); ++ix)
                psi_rows[i][ix] = m[ix].value * std::exp(I * k * xs[ix]);
            // both rays carry the analytic continuation of N; the paired
            // imaginary-axis terms supply the conjugate structure
            Nv[i] = impl_->Nval(k);
        });
        for (std::size_t i = 0; i < ns.z.size(); ++i) {
            const cplx k = ns.z[i];
            const bool positive = std::real(k) > 0.0;
            for (std::size_t jy = 0; jy < ys.size(); ++jy) {
                const double y = ys[jy];
                // sign: -(1/2i pi) for the outgoing ray, +(1/2i pi) e^{+ky}
                // for the reflected one
                const cplx expf = positive ? std::exp(-k * y) : std::exp(k * y);
                const cplx pref = (positive ? -1.0 : 1.0) / (2.0 * I * PI);
                const cplx w = pref * ns.w_kronrod[i] * expf * Nv[i];
                for (std::size_t ix = 0; ix < xs.size(); ++ix)
                    field.at(ix, jy) += w * psi_rows[i][ix];
            }
        }
    }

    // Imaginary-axis pieces carrying F / psi(0,k).
    {
        quad::Contour c;
        c.add_line(cplx(0.0, 0.0), cplx(0.0, Ki));
        const double y_rate = ys.empty() ? 1.0 : *std::max_element(ys.begin(), ys.end());
        const auto ns = quad::make_nodes(c, opt.rad_per_panel,
                                         [&](cplx) { return y_rate + d.g_support + 2.0; });
        std::vector<std::vector<cplx>> psi_rows(ns.z.size());
        std::vector<cplx> Fv(ns.z.size()), psi0v(ns.z.size()), ratio(ns.z.size());
        parallel_for(ns.z.size(), opt.threads, [&](std::size_t i) {
            const cplx k = ns.z[i];
            const auto m = impl_->jost.psi_factored(k, xs);
            psi_rows[i].resize(xs.size());
            for (std::size_t ix = 0; ix < xs.size(); ++ix)
                psi_rows[i][ix] = m[ix].value * std::exp(I * k * xs[ix]);
            Fv[i] = impl_->Fval(k);
            psi0v[i] = impl_->boundary(k).psi0;
            ratio[i] = (k - d.gamma1) / (k + d.gamma1);
        });
        for (std::size_t i = 0; i < ns.z.size(); ++i) {
            const cplx k = ns.z[i];
            if (std::abs(psi0v[i]) < opt.psi0_cutoff)
                throw PsiZeroAtOrigin("psi(0,k) ~ 0 on the imaginary contour");
            for (std::size_t jy = 0; jy < ys.size(); ++jy) {
                const double y = ys[jy];
                const cplx bracket =
                    std::exp(-k * y) * Fv[i] + std::exp(k * y) * ratio[i] * Fv[i];
                const cplx w = ns.w_kronrod[i] / (2.0 * I * PI) * bracket / psi0v[i];
                for (std::size_t ix = 0; ix < xs.size(); ++ix)
                    field.at(ix, jy) += w * psi_rows[i][ix];
            }
        }
    }

    field.diagnostics.notes.push_back("k_real=" + std::to_string(Kr) +
                                      " k_imag=" + std::to_string(Ki));
    field.diagnostics.notes.push_back("max_abs_imag=" + std::to_string(max_abs_imag(field)));
    return field;
}

FieldSample LaplaceSolver::representation_evaluate(const std::function<cplx(cplx)>& rho,
                                                   const std::function<cplx(cplx)>& g0k,
                                                   std::span<const double> xs,
                                                   std::span<const double> ys) const {
    const auto& opt = impl_->opt;
    FieldSample field;
    field.axis1.assign(xs.begin(), xs.end());
    field.axis2.assign(ys.begin(), ys.end());
    field.values.assign(xs.size() * ys.size(), cplx{});

    const double x_max = xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
    const double Kr = impl_->choose_k_real();
    const double Ki = impl_->choose_k_imag();

    {
        quad::Contour c;
        c.add_line(cplx(0.0, 0.0), cplx(Kr, 0.0));
        const auto ns = quad::make_nodes(c, opt.rad_per_panel,
                                         [&](cplx) { return x_max + impl_->data.f_support + 2.0; });
        for (std::size_t i = 0; i < ns.z.size(); ++i) {
            const cplx k = ns.z[i];
            const auto m = impl_->jost.psi_factored(k, xs);
            const cplx rv = rho(k);
            for (std::size_t jy = 0; jy < ys.size(); ++jy) {
                const cplx w = -ns.w_kronrod[i] / (2.0 * I * PI) * std::exp(-k * ys[jy]);
                for (std::size_t ix = 0; ix < xs.size(); ++ix) {
                    const cplx psi = m[ix].value * std::exp(I * k * xs[ix]);
                    field.at(ix, jy) += w * (rv * psi - std::conj(rv) * std::conj(psi));
                }
            }
        }
    }
    {
        quad::Contour c;
        c.add_line(cplx(0.0, 0.0), cplx(0.0, Ki));
        const double y_rate = ys.empty() ? 1.0 : *std::max_element(ys.begin(), ys.end());
        const auto ns = quad::make_nodes(c, opt.rad_per_panel,
                                         [&](cplx) { return y_rate + impl_->data.g_support + 2.0; });
        for (std::size_t i = 0; i < ns.z.size(); ++i) {
            const cplx k = ns.z[i];
            const auto m = impl_->jost.psi_factored(k, xs);
            const BoundaryVals bv = impl_->boundary(k);
            if (std::abs(bv.psi0) < opt.psi0_cutoff)
                throw PsiZeroAtOrigin("psi(0,k) ~ 0 on the imaginary contour");
            for (std::size_t jy = 0; jy < ys.size(); ++jy) {
                const double y = ys[jy];
                const cplx bracket = std::exp(-k * y) * g0k(k) + std::exp(k * y) * g0k(-k);
                const cplx w = ns.w_kronrod[i] / (2.0 * I * PI) * bracket / bv.psi0;
                for (std::size_t ix = 0; ix < xs.size(); ++ix)
                    field.at(ix, jy) += w * m[ix].value * std::exp(I * k * xs[ix]);
            }
        }
    }
    field.diagnostics.notes.push_back("max_abs_imag=" + std::to_string(max_abs_imag(field)));
    return field;
}

cplx LaplaceSolver::rho_from_trace(const RealFn& q_y0, double x_support,
                                   const std::function<cplx(cplx)>& g0k, cplx k) const {
    // f0(k) = int q(x,0) phi dx - (phi(0)/psi(0)) int q(x,0) psi dx
    const double rate = std::abs(k) + 2.0;
    const auto n = quad::gauss_panels(0.0, x_support, impl_->opt.rad_per_panel,
                                      [&](double) { return rate; });
    const auto mpsi = impl_->jost.psi_factored(k, n.x);
    const auto mphi = impl_->jost.phi_factored(k, n.x);
    cplx int_phi{}, int_psi{};
    for (std::size_t i = 0; i < n.x.size(); ++i) {
        const double x = n.x[i];
        int_phi += n.w[i] * q_y0(x) * mphi[i].value * std::exp(-I * k * x);
        int_psi += n.w[i] * q_y0(x) * mpsi[i].value * std::exp(I * k * x);
    }
    const BoundaryVals bv = impl_->boundary(k);
    const cplx f0 = int_phi - int_psi / bv.psi0;
    // 1/(i a) = 2k/W
    return f0 * (2.0 * k / bv.W) + g0k(-k) / bv.psi0;
}

cplx LaplaceSolver::g0k_from_y0_trace(const RealFn& q_y0, double x_support, cplx k,
                                      double q00) const {
    if (std::imag(k) < 0.0)
        return std::conj(g0k_from_y0_trace(q_y0, x_support, std::conj(k), q00));
    const double rate = std::abs(k) + 2.0;
    const auto n = quad::gauss_panels(0.0, x_support, impl_->opt.rad_per_panel,
                                      [&](double) { return rate; });
    const auto m = impl_->jost.psi_factored(k, n.x);
    cplx trace_psi{};
    for (std::size_t i = 0; i < n.x.size(); ++i)
        trace_psi += n.w[i] * q_y0(n.x[i]) * m[i].value * std::exp(I * k * n.x[i]);
    const BoundaryVals bv = impl_->boundary(k);
    return (impl_->data.beta * bv.psi0 * q00 + impl_->Hval(k) -
            (k + impl_->data.gamma1) * trace_psi) /
           impl_->Dval(k, bv);
}

cplx LaplaceSolver::boundary_two_sided_transform(const RealFn& q_x0, double y_support,
                                                 double y, cplx k) const {
    const double rate = std::abs(std::imag(k)) + 2.0;
    cplx acc{};
    if (y > 0.0) {
        const auto n1 = quad::gauss_panels(0.0, y, impl_->opt.rad_per_panel,
                                           [&](double) { return rate; });
        for (std::size_t i = 0; i < n1.x.size(); ++i)
            acc += n1.w[i] * std::exp(-k * (y - n1.x[i])) * q_x0(n1.x[i]);
    }
    const auto n2 = quad::gauss_panels(y, y_support, impl_->opt.rad_per_panel,
                                       [&](double) { return rate; });
    for (std::size_t i = 0; i < n2.x.size(); ++i)
        acc += n2.w[i] * std::exp(k * (y - n2.x[i])) * q_x0(n2.x[i]);
    return acc;
}

std::pair<double, double> LaplaceSolver::global_relation_residual(
    const RealFn& q_y0, const RealFn& qy_y0, const RealFn& q_x0, const RealFn& qx_x0,
    double x_support, double y_support, std::span<const cplx> k_phi,
    std::span<const cplx> k_psi) const {
    double r_phi = 0.0, r_psi = 0.0;
    for (const cplx& k : k_phi) {
        const double rate = std::abs(k) + 2.0;
        const auto nx = quad::gauss_panels(0.0, x_support, impl_->opt.rad_per_panel,
                                           [&](double) { return rate; });
        const auto mphi = impl_->jost.phi_factored(k, nx.x);
        cplx acc{};
        for (std::size_t i = 0; i < nx.x.size(); ++i) {
            const double x = nx.x[i];
            acc += nx.w[i] * (k * q_y0(x) - qy_y0(x)) * mphi[i].value * std::exp(-I * k * x);
        }
        const auto nyn = quad::gauss_panels(0.0, y_support, impl_->opt.rad_per_panel,
                                            [&](double) { return rate; });
        for (std::size_t i = 0; i < nyn.x.size(); ++i) {
            const double y = nyn.x[i];
            acc += nyn.w[i] * std::exp(k * y) * (q_x0(y) * (-I * k) - qx_x0(y));
        }
        r_phi = std::max(r_phi, std::abs(acc));
    }
    for (const cplx& k : k_psi) {
        const double rate = std::abs(k) + 2.0;
        const auto nx = quad::gauss_panels(0.0, x_support, impl_->opt.rad_per_panel,
                                           [&](double) { return rate; });
        const auto mpsi = impl_->jost.psi_factored(k, nx.x);
        cplx acc{};
        for (std::size_t i = 0; i < nx.x.size(); ++i) {
            const double x = nx.x[i];
            acc += nx.w[i] * (k * q_y0(x) - qy_y0(x)) * mpsi[i].value * std::exp(I * k * x);
        }
        const BoundaryVals bv = impl_->boundary(k);
        const auto nyn = quad::gauss_panels(0.0, y_support, impl_->opt.rad_per_panel,
                                            [&](double) { return rate; });
        for (std::size_t i = 0; i < nyn.x.size(); ++i) {
            const double y = nyn.x[i];
            acc += nyn.w[i] * std::exp(k * y) * (q_x0(y) * bv.psix0 - qx_x0(y) * bv.psi0);
        }
        r_psi = std::max(r_psi, std::abs(acc));
    }
    return {r_phi, r_psi};
}

double LaplaceSolver::rh_jump_residual(const std::function<cplx(cplx)>& candidate_g0k,
                                       double q00, std::span<const double> s_grid) const {
    const auto& d = impl_->data;
    double worst = 0.0;
    for (double s : s_grid) {
        const cplx k(0.0, s);
        const BoundaryVals bv = impl_->boundary(k);
        const cplx Dv = impl_->Dval(k, bv);
        const cplx beta_term =
            d.beta == 0.0 ? cplx{}
                          : 2.0 * k * d.beta * bv.psi0 / ((k - d.gamma1) * Dv) * q00;
        const cplx r1 =
            candidate_g0k(k) + J(k) * candidate_g0k(-k) - beta_term - impl_->Fval(k);
        worst = std::max(worst, std::abs(r1));
        // mirrored relation on arg k = 3 pi / 2
        const cplx km = -k;
        const cplx beta_term_m =
            d.beta == 0.0 ? cplx{}
                          : 2.0 * km * d.beta * bv.psi0 / ((km + d.gamma1) * Dv) * q00;
        const cplx r2 =
            candidate_g0k(-km) + J(-km) * candidate_g0k(km) - beta_term_m - impl_->Fval(-km);
        worst = std::max(worst, std::abs(r2));
    }
    return worst;
}

MuCheckReport LaplaceSolver::mu_functions_check(
    const std::function<double(double, double)>& q_field, double x_support, double y_support,
    std::span<const cplx> k_samples) const {
    const auto& opt = impl_->opt;
    MuCheckReport rep;

    auto I2 = [&](double y, cplx k) {
        // int_0^y e^{-k(y-eta)} q(0,eta) + int_y^inf e^{k(y-eta)} q(0,eta)
        const double rate = std::abs(std::imag(k)) + 2.0;
        cplx acc{};
        if (y > 0.0) {
            const auto n1 = quad::gauss_panels(0.0, y, opt.rad_per_panel,
                                               [&](double) { return rate; });
            for (std::size_t i = 0; i < n1.x.size(); ++i)
                acc += n1.w[i] * std::exp(-k * (y - n1.x[i])) * q_field(0.0, n1.x[i]);
        }
        const auto n2 = quad::gauss_panels(y, y_support, opt.rad_per_panel,
                                           [&](double) { return rate; });
        for (std::size_t i = 0; i < n2.x.size(); ++i)
            acc += n2.w[i] * std::exp(k * (y - n2.x[i])) * q_field(0.0, n2.x[i]);
        return acc;
    };

    auto I1 = [&](double x, double y, cplx k) {
        const double rate = std::abs(k) + 2.0;
        const BoundaryVals bv = impl_->boundary(k);
        cplx left{}, right{}, full{};
        {
            const auto n = quad::gauss_panels(x, x_support, opt.rad_per_panel,
                                              [&](double) { return rate; });
            const auto m = impl_->jost.psi_factored(k, n.x);
            for (std::size_t i = 0; i < n.x.size(); ++i)
                right += n.w[i] * q_field(n.x[i], y) * m[i].value * std::exp(I * k * n.x[i]);
        }
        if (x > 0.0) {
            const auto n = quad::gauss_panels(0.0, x, opt.rad_per_panel,
                                              [&](double) { return rate; });
            const auto m = impl_->jost.phi_factored(k, n.x);
            for (std::size_t i = 0; i < n.x.size(); ++i)
                left += n.w[i] * q_field(n.x[i], y) * m[i].value * std::exp(-I * k * n.x[i]);
        }
        {
            const auto n = quad::gauss_panels(0.0, x_support, opt.rad_per_panel,
                                              [&](double) { return rate; });
            const auto m = impl_->jost.psi_factored(k, n.x);
            for (std::size_t i = 0; i < n.x.size(); ++i)
                full += n.w[i] * q_field(n.x[i], y) * m[i].value * std::exp(I * k * n.x[i]);
        }
        const JostPair phix = impl_->jost.phi_at(k, x);
        const JostPair psix = impl_->jost.psi_at(k, x);
        return (2.0 * k / bv.W) *
               (phix.value * right + psix.value * (left - full / bv.psi0));
    };

    auto mu1 = [&](double x, double y, cplx k) {
        const BoundaryVals bv = impl_->boundary(k);
        const JostPair psix = impl_->jost.psi_at(k, x);
        return (I1(x, y, k) + psix.value / bv.psi0 * I2(y, k)) / (2.0 * k);
    };

    const double probes[3][2] = {{0.8, 1.1}, {1.7, 2.3}, {3.1, 0.9}};
    for (const cplx& k : k_samples) {
        for (const auto& pr : probes) {
            const double x = pr[0], y = pr[1];
            // (i) equation defect via central differences in x
            const double h = 5e-3;
            const cplx mc = mu1(x, y, k);
            const cplx mp = mu1(x + h, y, k);
            const cplx mm = mu1(x - h, y, k);
            const cplx mu_xx = (mp - 2.0 * mc + mm) / (h * h);
            const cplx defect =
                mu_xx + (impl_->potential(x) + k * k) * mc - q_field(x, y);
            rep.ode_residual = std::max(rep.ode_residual, std::abs(defect));
            // (iii) decay probe
            rep.decay_bound = std::max(rep.decay_bound, std::abs(k * mc));
        }
    }

    // (ii) jump across arg k = pi/2 at a representative point
    {
        const cplx k = I * 1.3;
        const double x = 1.2, y = 1.4;
        const BoundaryVals bv = impl_->boundary(k);
        const JostPair psix = impl_->jost.psi_at(k, x);
        const cplx twokmu1 = I1(x, y, k) + psix.value / bv.psi0 * I2(y, k);
        const cplx twokmu2 = I1(x, y, k) - psix.value / bv.psi0 * I2(y, -k);
        auto g0k = [&](cplx kk) {
            const double rate = std::abs(std::imag(kk)) + 2.0;
            const auto n = quad::gauss_panels(0.0, y_support, opt.rad_per_panel,
                                              [&](double) { return rate; });
            cplx acc{};
            for (std::size_t i = 0; i < n.x.size(); ++i)
                acc += n.w[i] * std::exp(kk * n.x[i]) * q_field(0.0, n.x[i]);
            return acc;
        };
        const cplx expected =
            psix.value / bv.psi0 * (std::exp(-k * y) * g0k(k) + std::exp(k * y) * g0k(-k));
        rep.jump_residual = std::abs(twokmu1 - twokmu2 - expected);
    }
    return rep;
}

std::pair<double, double> LaplaceSolver::discarded_contour_magnitudes(
    const std::function<cplx(cplx)>& g0k, double x, double y, double K) const {
    const auto& d = impl_->data;
    auto integrand_d1 = [&](cplx k) {
        const BoundaryVals bv = impl_->boundary(k);
        const JostPair psi = impl_->jost.psi_at(k, x);
        return std::exp(-k * y) * psi.value * (k + d.gamma1) / (k - d.gamma1) * g0k(-k) /
               bv.psi0;
    };
    auto integrand_d2 = [&](cplx k) {
        const BoundaryVals bv = impl_->boundary(k);
        const JostPair psi = impl_->jost.psi_at(k, x);
        return std::exp(k * y) * psi.value * (k - d.gamma1) / (k + d.gamma1) * g0k(k) /
               bv.psi0;
    };
    quad::QuadOptions qo;
    qo.tol = 1e-7;
    qo.throw_on_failure = false;
    quad::Contour d1;
    d1.add_line(cplx(0.0, 0.0), cplx(K, 0.0));
    quad::Contour d1b;
    d1b.add_line(cplx(0.0, K), cplx(0.0, 0.0));
    const auto rate = [&](cplx) { return x + y + 4.0; };
    const cplx i1 = quad::integrate_contour(integrand_d1, d1, qo, rate).value +
                    quad::integrate_contour(integrand_d1, d1b, qo, rate).value;
    quad::Contour d2a;
    d2a.add_line(cplx(-K, 0.0), cplx(0.0, 0.0));
    quad::Contour d2b;
    d2b.add_line(cplx(0.0, 0.0), cplx(0.0, K));
    const cplx i2 = quad::integrate_contour(integrand_d2, d2a, qo, rate).value +
                    quad::integrate_contour(integrand_d2, d2b, qo, rate).value;
    return {std::abs(i1 / (2.0 * I * PI)), std::abs(i2 / (2.0 * I * PI))};
}

double laplace_pde_residual(const FieldSample& field, const Potential& potential) {
    const auto& xs = field.axis1;
    const auto& ys = field.axis2;
    if (xs.size() < 3 || ys.size() < 3) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        const double dxp = xs[i + 1] - xs[i], dxm = xs[i] - xs[i - 1];
        for (std::size_t j = 1; j + 1 < ys.size(); ++j) {
            const double dyp = ys[j + 1] - ys[j], dym = ys[j] - ys[j - 1];
            const cplx qxx = 2.0 * (dxm * field.at(i + 1, j) - (dxp + dxm) * field.at(i, j) +
                                    dxp * field.at(i - 1, j)) /
                             (dxp * dxm * (dxp + dxm));
            const cplx qyy = 2.0 * (dym * field.at(i, j + 1) - (dyp + dym) * field.at(i, j) +
                                    dyp * field.at(i, j - 1)) /
                             (dyp * dym * (dyp + dym));
            const cplx res = qxx + qyy + potential(xs[i]) * field.at(i, j);
            worst = std::max(worst, std::abs(res));
        }
    }
    return worst;
}

}  // namespace ut
