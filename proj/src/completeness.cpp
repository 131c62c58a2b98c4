#include "unitransform/completeness.hpp"

#include <algorithm>
#include <cmath>

#include "unitransform/errors.hpp"
#include "unitransform/quadrature.hpp"
#include "unitransform/transforms.hpp"

namespace ut {

namespace {

double choose_k_max(const ComplexFn& f, double f_support, const JostEvaluator& jost,
                    SpectralBasis basis, const CompletenessOptions& opt) {
    if (opt.k_max > 0.0) return opt.k_max;
    double peak = 1e-300;
    double K = 8.0;
    for (; K <= 120.0; K *= 1.4) {
        double edge = 0.0;
        for (double k : {K, 0.93 * K}) {
            const auto tr = initial_transforms(f, f_support, jost, basis, cplx(k, 0.0));
            edge = std::max(edge, std::abs(tr.hat));
            peak = std::max(peak, std::abs(tr.hat));
        }
        for (double k : {0.0, 0.25 * K, 0.5 * K}) {
            const auto tr = initial_transforms(f, f_support, jost, basis, cplx(k, 0.0));
            peak = std::max(peak, std::abs(tr.hat));
        }
        // The truncated tail enters through an oscillatory integral, worth an
        // extra 1/K beyond the raw transform magnitude.
        if (edge / (1.0 + K) < opt.k_tail_ratio * peak) return K;
    }
    return 120.0;
}

}  // namespace

double psi_norm_squared(const JostEvaluator& jost, double p) {
    const double xs = std::max(jost.potential().x_support, 1.0);
    const auto nodes = quad::gauss_panels(0.0, xs, 6.0, [&](double) { return p + 2.0; });
    const auto m = jost.psi_factored(I * p, nodes.x);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.x.size(); ++i) {
        const double psi = std::real(m[i].value) * std::exp(-p * nodes.x[i]);
        acc += nodes.w[i] * psi * psi;
    }
    return acc + std::exp(-2.0 * p * xs) / (2.0 * p);  // plane-wave tail
}

std::vector<cplx> completeness_reconstruct(const ComplexFn& f, double f_support,
                                           const JostEvaluator& jost, SpectralBasis basis,
                                           std::span<const double> x_grid,
                                           const CompletenessOptions& opt) {
    const double K = choose_k_max(f, f_support, jost, basis, opt);
    const double x_max_grid = x_grid.empty() ? 0.0 : *std::max_element(x_grid.begin(), x_grid.end());

    quad::Contour contour;
    contour.add_line(cplx(-K, 0.0), cplx(0.0, 0.0));
    contour.add_line(cplx(0.0, 0.0), cplx(K, 0.0));
    const auto rate = [&](cplx z) { return x_max_grid + f_support + 2.0 / (1.0 + std::abs(z)); };
    const auto nodes = quad::make_nodes(contour, opt.rad_per_panel, rate);

    // Shared abscissae: origin, reconstruction grid, data-quadrature nodes.
    std::vector<cplx> recon(x_grid.size(), cplx{});

    for (std::size_t nk = 0; nk < nodes.z.size(); ++nk) {
        const cplx k = nodes.z[nk];
        const double krate = std::abs(k) + 2.0;
        const auto data_nodes = quad::gauss_panels(0.0, f_support, opt.rad_per_panel,
                                                   [&](double) { return krate; });
        std::vector<double> xs;
        xs.reserve(1 + x_grid.size() + data_nodes.x.size());
        xs.push_back(0.0);
        xs.insert(xs.end(), x_grid.begin(), x_grid.end());
        xs.insert(xs.end(), data_nodes.x.begin(), data_nodes.x.end());
        std::vector<std::size_t> order(xs.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
        std::vector<double> xs_sorted(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) xs_sorted[i] = xs[order[i]];

        const auto m = jost.psi_factored(k, xs_sorted);
        const auto w = basis == SpectralBasis::half_line ? jost.phi_factored(k, xs_sorted)
                                                         : jost.Phi_factored(k, xs_sorted);
        std::vector<JostPair> m_at(xs.size()), w_at(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            m_at[order[i]] = m[i];
            w_at[order[i]] = w[i];
        }

        const cplx wron = w_at[0].value * m_at[0].deriv - w_at[0].deriv * m_at[0].value +
                          2.0 * I * k * w_at[0].value * m_at[0].value;

        cplx fhat{};
        for (std::size_t i = 0; i < data_nodes.x.size(); ++i) {
            const std::size_t ix = 1 + x_grid.size() + i;
            const cplx kernel = w_at[ix].value * std::exp(-I * k * data_nodes.x[i]);
            fhat += data_nodes.w[i] * kernel * f(data_nodes.x[i]);
        }

        const cplx coeff = nodes.w_kronrod[nk] / (2.0 * PI) * (2.0 * I * k / wron) * fhat;
        for (std::size_t i = 0; i < x_grid.size(); ++i)
            recon[i] += coeff * m_at[1 + i].value * std::exp(I * k * x_grid[i]);
    }

    // Discrete terms at the zeros of a (or A).
    ScatteringEvaluator scat(jost, basis);
    const auto ps = scat.find_bound_state_ps();
    const auto adots = scat.a_dot_at(ps);
    for (std::size_t j = 0; j < ps.size(); ++j) {
        const cplx kj = I * ps[j];
        const cplx fhat_j = initial_transforms(f, f_support, jost, basis, kj).hat;
        const auto mj = jost.psi_factored(kj, x_grid);
        for (std::size_t i = 0; i < x_grid.size(); ++i) {
            const cplx psi_j = mj[i].value * std::exp(I * kj * x_grid[i]);
            recon[i] += -I * psi_j / adots[j] * fhat_j;
        }
    }
    return recon;
}

std::vector<cplx> completeness_sine_analogue(const ComplexFn& f, double f_support,
                                             const JostEvaluator& jost,
                                             std::span<const double> x_grid,
                                             const CompletenessOptions& opt) {
    const SpectralBasis basis = SpectralBasis::half_line;
    const double K = choose_k_max(f, f_support, jost, basis, opt);
    const double x_max_grid = x_grid.empty() ? 0.0 : *std::max_element(x_grid.begin(), x_grid.end());

    quad::Contour contour;
    contour.add_line(cplx(-K, 0.0), cplx(0.0, 0.0));
    contour.add_line(cplx(0.0, 0.0), cplx(K, 0.0));
    const auto rate = [&](cplx z) { return x_max_grid + f_support + 2.0 / (1.0 + std::abs(z)); };
    const auto nodes = quad::make_nodes(contour, opt.rad_per_panel, rate);

    std::vector<cplx> recon(x_grid.size(), cplx{});

    for (std::size_t nk = 0; nk < nodes.z.size(); ++nk) {
        const cplx k = nodes.z[nk];
        const double krate = std::abs(k) + 2.0;
        const auto data_nodes = quad::gauss_panels(0.0, f_support, opt.rad_per_panel,
                                                   [&](double) { return krate; });
        std::vector<double> xs;
        xs.push_back(0.0);
        xs.insert(xs.end(), x_grid.begin(), x_grid.end());
        xs.insert(xs.end(), data_nodes.x.begin(), data_nodes.x.end());
        std::vector<std::size_t> order(xs.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
        std::vector<double> xs_sorted(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) xs_sorted[i] = xs[order[i]];

        const auto m = jost.psi_factored(k, xs_sorted);
        const auto n = jost.phi_factored(k, xs_sorted);
        std::vector<JostPair> m_at(xs.size()), n_at(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            m_at[order[i]] = m[i];
            n_at[order[i]] = n[i];
        }

        const cplx psi0 = m_at[0].value;
        if (std::abs(psi0) < 1e-7)
            throw PoleOnContour("psi(0,k) vanishes near the integration contour");
        const cplx wron = m_at[0].deriv + 2.0 * I * k * m_at[0].value;

        cplx fcheck{};
        for (std::size_t i = 0; i < data_nodes.x.size(); ++i) {
            const std::size_t ix = 1 + x_grid.size() + i;
            const double x = data_nodes.x[i];
            const cplx kernel = n_at[ix].value * std::exp(-I * k * x) -
                                m_at[ix].value * std::exp(I * k * x) / psi0;
            fcheck += data_nodes.w[i] * kernel * f(x);
        }

        const cplx coeff = nodes.w_kronrod[nk] / (2.0 * PI) * (2.0 * I * k / wron) * fcheck;
        for (std::size_t i = 0; i < x_grid.size(); ++i)
            recon[i] += coeff * m_at[1 + i].value * std::exp(I * k * x_grid[i]);
    }

    ScatteringEvaluator scat(jost, basis);

    // Discrete terms of the modified kernel; these vanish identically because
    // phi and psi are proportional at the zeros of a, but are kept as written.
    const auto ps = scat.find_bound_state_ps();
    const auto adots = scat.a_dot_at(ps);
    for (std::size_t j = 0; j < ps.size(); ++j) {
        const cplx kj = I * ps[j];
        const auto tr = initial_transforms(f, f_support, jost, basis, kj);
        const cplx psi0 = jost.psi_at(kj, 0.0).value;
        const cplx fcheck_j = tr.hat - tr.tilde / psi0;
        const auto mj = jost.psi_factored(kj, x_grid);
        for (std::size_t i = 0; i < x_grid.size(); ++i)
            recon[i] += -I * mj[i].value * std::exp(I * kj * x_grid[i]) / adots[j] * fcheck_j;
    }

    // Dirichlet bound states (zeros of psi(0, ip)): the continuum kernel is
    // blind to them, so add the projector onto each eigenfunction.
    for (double tau : scat.psi0_zero_ps()) {
        const cplx ktau = I * tau;
        const cplx coeff =
            initial_transforms(f, f_support, jost, basis, ktau).tilde / psi_norm_squared(jost, tau);
        const auto mt = jost.psi_factored(ktau, x_grid);
        for (std::size_t i = 0; i < x_grid.size(); ++i)
            recon[i] += coeff * mt[i].value * std::exp(I * ktau * x_grid[i]);
    }
    return recon;
}

}  // namespace ut
