#include "unitransform/schrodinger.hpp"

#include <algorithm>
#include <cmath>

#include "unitransform/errors.hpp"
#include "unitransform/quadrature.hpp"
#include "unitransform/special.hpp"

namespace ut {

namespace {

struct GridRefs {
    std::vector<double> xs;
    std::vector<double> ts;
};

// Per-node spectral data shared by all representations.
struct KNode {
    cplx k;
    cplx wk;  // contour weight (Kronrod), includes dz
    cplx wg;  // embedded Gauss weight
    std::vector<cplx> psi_row;  // psi(x_i, k) on the reconstruction grid
    cplx psi0{}, psix0{};
    cplx X0{}, Xx0{};  // kernel boundary values (phi or Phi)
    cplx W{};          // 2ik a(k) (or 2ik A(k))
    cplx qhat0{}, qtilde0{};
    cplx ghat{};       // running boundary-datum transform
    double t_done = 0.0;
};

struct NodePrepFlags {
    bool kernel_transform = false;  // qhat0 (needs kernel at data nodes)
    bool tilde_transform = false;   // qtilde0
    bool kernel_boundary = false;   // X(0,k), X_x(0,k), W
};

double sample_max_abs(const ComplexFn& f, double a, double b) {
    if (!f) return 0.0;
    double m = 0.0;
    for (int i = 0; i <= 200; ++i) m = std::max(m, std::abs(f(a + (b - a) * i / 200.0)));
    return m;
}

}  // namespace

struct SchrodingerSolver::Impl {
    Potential potential;
    SchrodingerData data;
    SchrodingerOptions opt;
    JostEvaluator jost;
    SpectralBasis spectral_basis;
    ScatteringData scat;
    std::vector<double> norm2_psi_tau;    // Dirichlet boundary-operator modes
    std::vector<double> norm2_psi_sigma;  // Neumann boundary-operator modes
    std::string compat_note;

    void attach_notes(FieldSample& f) const {
        if (!compat_note.empty()) f.diagnostics.notes.push_back(compat_note);
        for (double tau : data.bc == BcKind::dirichlet ? scat.psi0_zeros : scat.psix0_zeros)
            f.diagnostics.notes.push_back("boundary-operator bound state at p=" +
                                          std::to_string(tau));
    }

    Impl(Potential pot, SchrodingerData d, SchrodingerOptions o)
        : potential(std::move(pot)),
          data(std::move(d)),
          opt(o),
          jost(potential, o.ode_tol),
          spectral_basis(default_basis(potential)) {
        if (data.bc == BcKind::dirichlet && !data.g0)
            throw ConfigError("dirichlet problem requires the boundary datum g0");
        if (data.bc == BcKind::neumann && !data.g1)
            throw ConfigError("neumann problem requires the boundary datum g1");
        ScatteringEvaluator ev(jost, spectral_basis);
        scat = ev.data();
        for (double tau : scat.psi0_zeros) norm2_psi_tau.push_back(psi_norm2(tau));
        for (double sg : scat.psix0_zeros) norm2_psi_sigma.push_back(psi_norm2(sg));
    }

    double psi_norm2(double p) const {
        const double xs = std::max(potential.x_support, 1.0);
        const auto nodes = quad::gauss_panels(0.0, xs, 6.0, [&](double) { return p + 2.0; });
        const auto m = jost.psi_factored(I * p, nodes.x);
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.x.size(); ++i) {
            const double v = std::real(m[i].value) * std::exp(-p * nodes.x[i]);
            acc += nodes.w[i] * v * v;
        }
        return acc + std::exp(-2.0 * p * xs) / (2.0 * p);
    }

    const ComplexFn& bdatum() const {
        return data.bc == BcKind::dirichlet ? data.g0 : data.g1;
    }

    DensityVariant variant() const {
        if (data.bc == BcKind::dirichlet)
            return spectral_basis == SpectralBasis::full_line ? DensityVariant::dirichlet_fullline
                                                              : DensityVariant::dirichlet_halfline;
        return spectral_basis == SpectralBasis::full_line ? DensityVariant::neumann_fullline
                                                          : DensityVariant::neumann_halfline;
    }

    // ---- single-point spectral objects (operation-level interface) ----

    void boundary_values(cplx k, cplx& psi0, cplx& psix0, cplx& X0, cplx& Xx0, cplx& W) const {
        const double x0[1] = {0.0};
        const JostPair m = jost.psi_factored(k, x0)[0];
        psi0 = m.value;
        psix0 = m.deriv + I * k * m.value;
        if (spectral_basis == SpectralBasis::half_line) {
            X0 = 1.0;
            Xx0 = -I * k;
            W = psix0 + I * k * psi0;
        } else {
            const JostPair P = jost.Phi_factored(k, x0)[0];
            X0 = P.value;
            Xx0 = P.deriv - I * k * P.value;
            W = X0 * psix0 - Xx0 * psi0;
        }
    }

    cplx density(cplx k, double t) const {
        cplx psi0, psix0, X0, Xx0, W;
        boundary_values(k, psi0, psix0, X0, Xx0, W);
        const auto tr = initial_transforms(data.q0, data.q0_support, jost, spectral_basis, k);
        cplx r, c;
        if (data.bc == BcKind::dirichlet) {
            if (std::abs(psi0) < opt.psi0_cutoff)
                throw PsiZeroAtOrigin("psi(0,k) vanishes at the evaluation point");
            r = X0 / psi0;
            c = W / (I * psi0);
        } else {
            if (std::abs(psix0) < opt.psi0_cutoff)
                throw PsiXZeroAtOrigin("psi_x(0,k) vanishes at the evaluation point");
            r = Xx0 / psix0;
            c = W / (I * psix0);
        }
        const cplx ghat = time_transform(bdatum(), k, t);
        return std::exp(-I * k * k * t) * (tr.hat - r * tr.tilde + c * ghat);
    }

    // ---- truncation policy ----

    double choose_k_max(double x_max, double t_max) const {
        if (opt.k_max > 0.0) return opt.k_max;
        double peak = 1e-300;
        double Kd = opt.k_max_floor;
        for (double K = opt.k_max_floor; K <= opt.k_max_cap; K *= 1.3) {
            Kd = K;
            double edge = 0.0;
            for (double f : {1.0, 0.91}) {
                const auto tr =
                    initial_transforms(data.q0, data.q0_support, jost, spectral_basis,
                                       cplx(K * f, 0.0));
                edge = std::max(edge, std::abs(tr.hat) + std::abs(tr.tilde));
            }
            for (double f : {0.02, 0.2, 0.45, 0.7}) {
                const auto tr =
                    initial_transforms(data.q0, data.q0_support, jost, spectral_basis,
                                       cplx(K * f, 0.0));
                peak = std::max(peak, std::abs(tr.hat) + std::abs(tr.tilde));
            }
            // The truncated tail enters through integrals oscillating in both
            // k x and k^2 t, so the raw transform magnitude overstates it.
            const double damp = (1.0 + K) * (1.0 + 2.0 * K * t_max);
            if (edge / damp < opt.data_tail_tol * peak) break;
        }
        // Boundary-term truncation: oscillatory tail after the analytic
        // completion, estimated against the field scale.
        const double gmax = sample_max_abs(bdatum(), 0.0, std::max(t_max, 1e-6));
        double Kb = opt.k_max_floor;
        if (gmax > 0.0 && t_max > 0.0) {
            const double scale = std::max({peak, gmax, 1e-12});
            while (Kb < opt.k_max_cap &&
                   (2.0 / PI) * gmax / (Kb * std::max(1.0, 2.0 * Kb * t_max - x_max)) >
                       opt.bdry_tail_tol * scale)
                Kb *= 1.3;
        }
        return std::clamp(std::max(Kd, Kb), opt.k_max_floor, opt.k_max_cap);
    }

    // ---- batched node preparation ----

    void prepare_node(KNode& node, std::span<const double> x_grid,
                      const NodePrepFlags& flags) const {
        const cplx k = node.k;
        const double krate = std::abs(k) + 2.0;
        quad::RealNodes data_nodes;
        if (flags.kernel_transform || flags.tilde_transform)
            data_nodes = quad::gauss_panels(0.0, data.q0_support, opt.inner_rad_per_panel,
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

        const auto m_sorted = jost.psi_factored(k, xs_sorted);
        std::vector<JostPair> m(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) m[order[i]] = m_sorted[i];

        node.psi0 = m[0].value;
        node.psix0 = m[0].deriv + I * k * m[0].value;
        node.psi_row.resize(x_grid.size());
        for (std::size_t i = 0; i < x_grid.size(); ++i)
            node.psi_row[i] = m[1 + i].value * std::exp(I * k * x_grid[i]);

        if (flags.tilde_transform) {
            cplx acc{};
            for (std::size_t i = 0; i < data_nodes.x.size(); ++i) {
                const double x = data_nodes.x[i];
                acc += data_nodes.w[i] * data.q0(x) * m[1 + x_grid.size() + i].value *
                       std::exp(I * k * x);
            }
            node.qtilde0 = acc;
        }

        const bool need_kernel = flags.kernel_transform || flags.kernel_boundary;
        if (!need_kernel) return;

        if (spectral_basis == SpectralBasis::half_line) {
            node.X0 = 1.0;
            node.Xx0 = -I * k;
            node.W = node.psix0 + I * k * node.psi0;
            if (flags.kernel_transform) {
                const auto n_sorted = jost.phi_factored(k, xs_sorted);
                std::vector<JostPair> n(xs.size());
                for (std::size_t i = 0; i < xs.size(); ++i) n[order[i]] = n_sorted[i];
                cplx acc{};
                for (std::size_t i = 0; i < data_nodes.x.size(); ++i) {
                    const double x = data_nodes.x[i];
                    acc += data_nodes.w[i] * data.q0(x) * n[1 + x_grid.size() + i].value *
                           std::exp(-I * k * x);
                }
                node.qhat0 = acc;
            }
        } else {
            const auto P_sorted = jost.Phi_factored(k, xs_sorted);
            std::vector<JostPair> P(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) P[order[i]] = P_sorted[i];
            node.X0 = P[0].value;
            node.Xx0 = P[0].deriv - I * k * P[0].value;
            node.W = node.X0 * node.psix0 - node.Xx0 * node.psi0;
            if (flags.kernel_transform) {
                cplx acc{};
                for (std::size_t i = 0; i < data_nodes.x.size(); ++i) {
                    const double x = data_nodes.x[i];
                    acc += data_nodes.w[i] * data.q0(x) * P[1 + x_grid.size() + i].value *
                           std::exp(-I * k * x);
                }
                node.qhat0 = acc;
            }
        }
    }

    std::vector<KNode> prepare_nodes(const quad::NodeSet& ns, std::span<const double> x_grid,
                                     const NodePrepFlags& flags) const {
        std::vector<KNode> nodes(ns.z.size());
        parallel_for(ns.z.size(), opt.threads, [&](std::size_t i) {
            nodes[i].k = ns.z[i];
            nodes[i].wk = ns.w_kronrod[i];
            nodes[i].wg = ns.w_gauss[i];
            prepare_node(nodes[i], x_grid, flags);
        });
        return nodes;
    }

    void advance_ghat(std::vector<KNode>& nodes, double t) const {
        const auto& g = bdatum();
        parallel_for(nodes.size(), opt.threads, [&](std::size_t i) {
            KNode& nd = nodes[i];
            if (t <= nd.t_done) return;
            const cplx ik2 = I * nd.k * nd.k;
            const double rate = std::abs(std::real(nd.k * nd.k)) + 2.0;
            const auto tn = quad::gauss_panels(nd.t_done, t, opt.inner_rad_per_panel,
                                               [&](double) { return rate; });
            cplx acc{};
            for (std::size_t j = 0; j < tn.x.size(); ++j)
                acc += tn.w[j] * std::exp(ik2 * tn.x[j]) * g(tn.x[j]);
            nd.ghat += acc;
            nd.t_done = t;
        });
    }

    // ---- discrete and corrective terms ----

    void add_bound_state_terms(FieldSample& field, std::span<const double> xs,
                               std::span<const double> ts, bool deformed_form) const {
        for (std::size_t j = 0; j < scat.bound_states.size(); ++j) {
            const double p = scat.bound_states[j];
            const cplx kj = I * p;
            const auto tr = initial_transforms(data.q0, data.q0_support, jost, spectral_basis, kj);
            cplx psi0, psix0, X0, Xx0, W;
            boundary_values(kj, psi0, psix0, X0, Xx0, W);
            cplx dens0;
            if (deformed_form) {
                dens0 = tr.hat;
            } else if (data.bc == BcKind::dirichlet) {
                dens0 = tr.hat - (X0 / psi0) * tr.tilde;
            } else {
                dens0 = tr.hat - (Xx0 / psix0) * tr.tilde;
            }
            const auto mj = jost.psi_factored(kj, xs);
            for (std::size_t ix = 0; ix < xs.size(); ++ix) {
                const cplx psi_j = mj[ix].value * std::exp(I * kj * xs[ix]);
                const cplx base = -I * psi_j / scat.a_dot[j] * dens0;
                for (std::size_t it = 0; it < ts.size(); ++it)
                    field.at(ix, it) += base * std::exp(-I * kj * kj * ts[it]);
            }
        }
    }

    // Boundary-operator bound states: zeros of psi(0, i tau) (Dirichlet) or
    // psi_x(0, i sigma) (Neumann). The global relation determines the
    // eigenmode coefficient from the data alone, since the unknown boundary
    // transform drops out exactly at these points.
    void add_boundary_operator_modes(FieldSample& field, std::span<const double> xs,
                                     std::span<const double> ts) const {
        const bool dirichlet = data.bc == BcKind::dirichlet;
        const auto& zeros = dirichlet ? scat.psi0_zeros : scat.psix0_zeros;
        const auto& norms = dirichlet ? norm2_psi_tau : norm2_psi_sigma;
        for (std::size_t j = 0; j < zeros.size(); ++j) {
            const double tau = zeros[j];
            const cplx ktau = I * tau;
            const auto tr = initial_transforms(data.q0, data.q0_support, jost, spectral_basis,
                                               ktau);
            cplx psi0, psix0, X0, Xx0, W;
            boundary_values(ktau, psi0, psix0, X0, Xx0, W);
            const auto mt = jost.psi_factored(ktau, xs);
            for (std::size_t it = 0; it < ts.size(); ++it) {
                const double t = ts[it];
                const cplx ghat = time_transform(bdatum(), ktau, t);
                const cplx coeff =
                    dirichlet ? std::exp(I * cplx(tau * tau * t)) * (tr.tilde + I * psix0 * ghat)
                              : std::exp(I * cplx(tau * tau * t)) * (tr.tilde - I * psi0 * ghat);
                for (std::size_t ix = 0; ix < xs.size(); ++ix) {
                    const cplx psi_t = mt[ix].value * std::exp(I * ktau * xs[ix]);
                    field.at(ix, it) += coeff / norms[j] * psi_t;
                }
            }
        }
    }

    // Analytic completion of the truncated boundary-term tail |k| > K.
    void add_tail_correction(FieldSample& field, std::span<const double> xs,
                             std::span<const double> ts, double K, bool d1_shape) const {
        if (!opt.tail_correction) return;
        const auto& g = bdatum();
        for (std::size_t it = 0; it < ts.size(); ++it) {
            const cplx gval = g(ts[it]);
            if (std::abs(gval) == 0.0) continue;
            for (std::size_t ix = 0; ix < xs.size(); ++ix) {
                const double z = K * xs[ix];
                cplx corr;
                if (data.bc == BcKind::dirichlet) {
                    const double si_tail = PI / 2 - special::sine_integral(z);
                    if (d1_shape)
                        corr = gval / PI * cplx(si_tail, special::ci_plus_e1(z));
                    else
                        corr = gval * (2.0 / PI) * si_tail;
                } else {
                    const double si_tail = PI / 2 - special::sine_integral(z);
                    const double x = xs[ix];
                    if (d1_shape) {
                        const double re = std::cos(z) / K - x * si_tail;
                        const double im = std::sin(z) / K -
                                          x * (z > 0 ? special::cosine_integral(z) : 0.0) +
                                          std::exp(-z) / K - x * special::expint_e1(std::max(z, 1e-300));
                        corr = -gval / PI * cplx(re, z > 0 ? im : 2.0 / K);
                    } else {
                        corr = -gval * (2.0 / PI) * (std::cos(z) / K - x * si_tail);
                    }
                }
                field.at(ix, it) += corr;
            }
        }
    }

    // ---- representations ----

    FieldSample reconstruct_direct_like(std::span<const double> xs, std::span<const double> ts,
                                        bool sine_route) const {
        if (sine_route && data.bc != BcKind::dirichlet)
            throw ConfigError("sine-kernel route applies to the Dirichlet problem");
        const double x_max = xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
        const double t_max = ts.empty() ? 0.0 : *std::max_element(ts.begin(), ts.end());
        const double K = choose_k_max(x_max, t_max);

        quad::Contour contour;
        contour.add_line(cplx(-K, 0.0), cplx(0.0, 0.0));
        contour.add_line(cplx(0.0, 0.0), cplx(K, 0.0));
        const auto rate = [&](cplx z) {
            return x_max + data.q0_support + 2.0 * std::abs(z) * t_max + 2.0;
        };
        const auto ns = quad::make_nodes(contour, opt.rad_per_panel, rate);

        NodePrepFlags flags;
        flags.kernel_transform = true;
        flags.tilde_transform = true;
        flags.kernel_boundary = true;
        auto nodes = prepare_nodes(ns, xs, flags);

        FieldSample field;
        field.axis1.assign(xs.begin(), xs.end());
        field.axis2.assign(ts.begin(), ts.end());
        field.values.assign(xs.size() * ts.size(), cplx{});

        std::vector<std::size_t> t_order(ts.size());
        for (std::size_t i = 0; i < t_order.size(); ++i) t_order[i] = i;
        std::sort(t_order.begin(), t_order.end(),
                  [&](auto a, auto b) { return ts[a] < ts[b]; });

        const bool dirichlet = data.bc == BcKind::dirichlet;
        std::vector<cplx> col(xs.size());
        double err_est = 0.0;
        for (std::size_t jt : t_order) {
            const double t = ts[jt];
            advance_ghat(nodes, t);
            std::fill(col.begin(), col.end(), cplx{});
            cplx probe_k{}, probe_g{};
            for (auto& nd : nodes) {
                const cplx denom = dirichlet ? nd.psi0 : nd.psix0;
                if (std::abs(denom) < opt.psi0_cutoff) {
                    if (dirichlet) throw PsiZeroAtOrigin("psi(0,k) ~ 0 on the contour");
                    throw PsiXZeroAtOrigin("psi_x(0,k) ~ 0 on the contour");
                }
                cplx dens;
                if (sine_route) {
                    // Modified-kernel route: the kernel vanishes at x=0, so
                    // the density follows from the kernel transform and the
                    // kernel's boundary slope alone, no elimination step.
                    const cplx qhatK = nd.qhat0 - nd.X0 * nd.qtilde0 / nd.psi0;
                    const cplx cK = -I * nd.W / nd.psi0;
                    dens = std::exp(-I * nd.k * nd.k * t) * (qhatK + cK * nd.ghat);
                } else {
                    const cplx r = (dirichlet ? nd.X0 : nd.Xx0) / denom;
                    const cplx c = nd.W / (I * denom);
                    dens = std::exp(-I * nd.k * nd.k * t) *
                           (nd.qhat0 - r * nd.qtilde0 + c * nd.ghat);
                }
                const cplx weight = (2.0 * I * nd.k / nd.W) / (2.0 * PI) * dens;
                for (std::size_t ix = 0; ix < xs.size(); ++ix)
                    col[ix] += nd.wk * weight * nd.psi_row[ix];
                probe_k += nd.wk * weight;
                probe_g += nd.wg * weight;
            }
            err_est = std::max(err_est, std::abs(probe_k - probe_g));
            for (std::size_t ix = 0; ix < xs.size(); ++ix) field.at(ix, jt) += col[ix];
        }

        add_bound_state_terms(field, xs, ts, /*deformed_form=*/false);
        add_boundary_operator_modes(field, xs, ts);
        add_tail_correction(field, xs, ts, K, /*d1_shape=*/false);
        field.diagnostics.notes.push_back("k_max=" + std::to_string(K));
        field.diagnostics.notes.push_back("quad_err_est=" + std::to_string(err_est));
        return field;
    }

    // Contour pieces for the deformed/longtime representations (Dirichlet).
    FieldSample reconstruct_contour(std::span<const double> xs, std::span<const double> ts,
                                    bool longtime) const {
        if (data.bc != BcKind::dirichlet)
            throw ConfigError("deformed representation applies to the Dirichlet problem");
        const double x_max = xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
        const double t_max = ts.empty() ? 0.0 : *std::max_element(ts.begin(), ts.end());
        const double K = choose_k_max(x_max, t_max);

        FieldSample field;
        field.axis1.assign(xs.begin(), xs.end());
        field.axis2.assign(ts.begin(), ts.end());
        field.values.assign(xs.size() * ts.size(), cplx{});

        const auto rate = [&](cplx z) {
            return x_max + data.q0_support + 2.0 * std::abs(z) * t_max + 2.0;
        };

        // (a) real-axis integral of the initial-data density.
        {
            quad::Contour axis;
            axis.add_line(cplx(-K, 0.0), cplx(0.0, 0.0));
            axis.add_line(cplx(0.0, 0.0), cplx(K, 0.0));
            const auto ns = quad::make_nodes(axis, opt.rad_per_panel, rate);
            NodePrepFlags flags;
            flags.kernel_transform = true;
            flags.kernel_boundary = true;
            auto nodes = prepare_nodes(ns, xs, flags);
            for (std::size_t jt = 0; jt < ts.size(); ++jt) {
                for (auto& nd : nodes) {
                    const cplx dens = std::exp(-I * nd.k * nd.k * ts[jt]) * nd.qhat0;
                    const cplx weight = (2.0 * I * nd.k / nd.W) / (2.0 * PI) * dens;
                    for (std::size_t ix = 0; ix < xs.size(); ++ix)
                        field.at(ix, jt) += nd.wk * weight * nd.psi_row[ix];
                }
            }
        }

        // (b) residue sum over the zeros of a.
        add_bound_state_terms(field, xs, ts, /*deformed_form=*/true);

        // (c) first-quadrant boundary, indented to pass every imaginary-axis
        // pole (zeros of a and of psi(0, .)) on the first-quadrant side.
        {
            std::vector<quad::Indent> indents;
            std::vector<double> poles = scat.bound_states;
            poles.insert(poles.end(), scat.psi0_zeros.begin(), scat.psi0_zeros.end());
            std::sort(poles.begin(), poles.end());
            for (std::size_t j = 0; j < poles.size(); ++j) {
                const double p = poles[j];
                if (p >= K) continue;
                double gap = std::min(p, K - p);
                if (j > 0) gap = std::min(gap, poles[j] - poles[j - 1]);
                if (j + 1 < poles.size()) gap = std::min(gap, poles[j + 1] - poles[j]);
                indents.push_back({I * p, std::min(p / 10.0, 0.4 * gap), quad::IndentSide::left});
            }
            quad::Contour d1;
            d1.add_indented_line(cplx(0.0, K), cplx(0.0, 0.0), indents);
            d1.add_line(cplx(0.0, 0.0), cplx(K, 0.0));
            const auto ns = quad::make_nodes(d1, opt.rad_per_panel, rate);
            NodePrepFlags flags;
            flags.tilde_transform = true;
            flags.kernel_boundary = true;
            auto nodes = prepare_nodes(ns, xs, flags);

            const double horizon = longtime ? decay_horizon(t_max) : 0.0;
            if (longtime) {
                parallel_for(nodes.size(), opt.threads, [&](std::size_t i) {
                    nodes[i].ghat = time_transform_inf(data.g0, nodes[i].k, horizon);
                });
            }

            std::vector<std::size_t> t_order(ts.size());
            for (std::size_t i = 0; i < t_order.size(); ++i) t_order[i] = i;
            std::sort(t_order.begin(), t_order.end(),
                      [&](auto a, auto b) { return ts[a] < ts[b]; });
            for (std::size_t jt : t_order) {
                const double t = ts[jt];
                if (!longtime) advance_ghat(nodes, t);
                for (auto& nd : nodes) {
                    if (std::abs(nd.psi0) < opt.psi0_cutoff)
                        throw PoleOnContour("psi(0,k) vanishes on the deformed contour");
                    const cplx bracket =
                        -nd.qtilde0 * nd.X0 * (2.0 * I * nd.k / nd.W) + 2.0 * nd.k * nd.ghat;
                    const cplx weight =
                        std::exp(-I * nd.k * nd.k * t) / (2.0 * PI * nd.psi0) * bracket;
                    for (std::size_t ix = 0; ix < xs.size(); ++ix)
                        field.at(ix, jt) += nd.wk * weight * nd.psi_row[ix];
                }
            }
        }

        // The finite-horizon boundary transform leaves a g0(t)-sized slow
        // tail; the infinite-horizon one is oscillatory in k^2 and needs no
        // completion.
        if (!longtime) add_tail_correction(field, xs, ts, K, /*d1_shape=*/true);
        field.diagnostics.notes.push_back("k_max=" + std::to_string(K));
        return field;
    }

    double decay_horizon(double t_max) const {
        if (opt.decay_horizon > 0.0) return opt.decay_horizon;
        const auto& g = bdatum();
        const double gmax = sample_max_abs(g, 0.0, std::max(t_max, 1.0));
        double T = std::max(2.0 * t_max, 2.0);
        while (T < 400.0) {
            double tail = 0.0;
            for (double f : {1.0, 0.85, 0.7}) tail = std::max(tail, std::abs(g(T * f)));
            if (tail < 1e-12 * std::max(gmax, 1e-300)) return T;
            T *= 1.5;
        }
        return T;
    }
};

SchrodingerSolver::SchrodingerSolver(Potential potential, SchrodingerData data,
                                     SchrodingerOptions opt)
    : impl_(std::make_unique<Impl>(std::move(potential), std::move(data), opt)) {
    // Compatibility at the corner x = t = 0 is advisory.
    const auto& d = impl_->data;
    if (d.bc == BcKind::dirichlet) {
        const double mismatch = std::abs(d.q0(0.0) - d.g0(0.0));
        if (mismatch > impl_->opt.compat_tol)
            impl_->compat_note = "corner compatibility |q0(0)-g0(0)| = " + std::to_string(mismatch);
    } else {
        const double h = 1e-6;
        const cplx dq0 = (d.q0(h) - d.q0(0.0)) / h;
        const double mismatch = std::abs(dq0 - d.g1(0.0));
        if (mismatch > std::max(1e-3, impl_->opt.compat_tol))
            impl_->compat_note =
                "corner compatibility |q0'(0)-g1(0)| = " + std::to_string(mismatch);
    }
}

SchrodingerSolver::~SchrodingerSolver() = default;

const JostEvaluator& SchrodingerSolver::jost() const { return impl_->jost; }
const ScatteringData& SchrodingerSolver::scattering() const { return impl_->scat; }
SpectralBasis SchrodingerSolver::basis() const { return impl_->spectral_basis; }
DensityVariant SchrodingerSolver::variant() const { return impl_->variant(); }
const SchrodingerOptions& SchrodingerSolver::options() const { return impl_->opt; }
const SchrodingerData& SchrodingerSolver::data() const { return impl_->data; }

cplx SchrodingerSolver::spectral_density(cplx k, double t) const { return impl_->density(k, t); }

FieldSample SchrodingerSolver::reconstruct_field(std::span<const double> xs,
                                                 std::span<const double> ts) const {
    auto f = impl_->reconstruct_direct_like(xs, ts, false);
    impl_->attach_notes(f);
    return f;
}

FieldSample SchrodingerSolver::reconstruct_deformed(std::span<const double> xs,
                                                    std::span<const double> ts) const {
    auto f = impl_->reconstruct_contour(xs, ts, false);
    impl_->attach_notes(f);
    return f;
}

FieldSample SchrodingerSolver::reconstruct_longtime(std::span<const double> xs,
                                                    std::span<const double> ts) const {
    auto f = impl_->reconstruct_contour(xs, ts, true);
    impl_->attach_notes(f);
    return f;
}

FieldSample SchrodingerSolver::solve_sine_analogue(std::span<const double> xs,
                                                   std::span<const double> ts) const {
    auto f = impl_->reconstruct_direct_like(xs, ts, true);
    impl_->attach_notes(f);
    return f;
}

FieldSample SchrodingerSolver::solve(Representation rep, std::span<const double> xs,
                                     std::span<const double> ts) const {
    switch (rep) {
        case Representation::direct: return reconstruct_field(xs, ts);
        case Representation::deformed: return reconstruct_deformed(xs, ts);
        case Representation::longtime: return reconstruct_longtime(xs, ts);
        case Representation::sine: return solve_sine_analogue(xs, ts);
    }
    throw ConfigError("unknown representation");
}

FieldSample classical_constant_coefficient(const SchrodingerData& data,
                                           std::span<const double> xs,
                                           std::span<const double> ts,
                                           const SchrodingerOptions& opt) {
    const bool dirichlet = data.bc == BcKind::dirichlet;
    if (dirichlet && !data.g0) throw ConfigError("dirichlet reference requires g0");
    if (!dirichlet && !data.g1) throw ConfigError("neumann reference requires g1");
    const ComplexFn& g = dirichlet ? data.g0 : data.g1;

    const double x_max = xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
    const double t_max = ts.empty() ? 0.0 : *std::max_element(ts.begin(), ts.end());

    // Fourier transform of q0 over the half line.
    auto qhat0 = [&](cplx k) {
        const auto dn = quad::gauss_panels(0.0, data.q0_support, opt.inner_rad_per_panel,
                                           [&](double) { return std::abs(k) + 2.0; });
        cplx acc{};
        for (std::size_t i = 0; i < dn.x.size(); ++i)
            acc += dn.w[i] * std::exp(-I * k * dn.x[i]) * data.q0(dn.x[i]);
        return acc;
    };

    double K = opt.k_max;
    if (K <= 0.0) {
        K = opt.k_max_floor;
        double peak = 1e-300;
        for (; K <= opt.k_max_cap; K *= 1.3) {
            double edge = std::abs(qhat0(cplx(K, 0.0))) + std::abs(qhat0(cplx(-K, 0.0)));
            for (double f : {0.02, 0.3, 0.6})
                peak = std::max(peak, std::abs(qhat0(cplx(K * f, 0.0))));
            const double damp = (1.0 + K) * (1.0 + 2.0 * K * t_max);
            if (edge / damp < opt.data_tail_tol * peak) break;
        }
        K = std::min(K, opt.k_max_cap);
    }

    FieldSample field;
    field.axis1.assign(xs.begin(), xs.end());
    field.axis2.assign(ts.begin(), ts.end());
    field.values.assign(xs.size() * ts.size(), cplx{});

    const auto rate = [&](cplx z) {
        return x_max + data.q0_support + 2.0 * std::abs(z) * t_max + 2.0;
    };

    // Real-axis part.
    {
        quad::Contour axis;
        axis.add_line(cplx(-K, 0.0), cplx(0.0, 0.0));
        axis.add_line(cplx(0.0, 0.0), cplx(K, 0.0));
        const auto ns = quad::make_nodes(axis, opt.rad_per_panel, rate);
        std::vector<cplx> qh(ns.z.size());
        parallel_for(ns.z.size(), opt.threads, [&](std::size_t i) { qh[i] = qhat0(ns.z[i]); });
        for (std::size_t i = 0; i < ns.z.size(); ++i) {
            const cplx k = ns.z[i];
            for (std::size_t jt = 0; jt < ts.size(); ++jt) {
                const cplx phase_t = std::exp(-I * k * k * ts[jt]);
                const cplx w = ns.w_kronrod[i] / (2.0 * PI) * phase_t * qh[i];
                for (std::size_t ix = 0; ix < xs.size(); ++ix)
                    field.at(ix, jt) += w * std::exp(I * k * xs[ix]);
            }
        }
    }

    // First-quadrant boundary part with the eliminated boundary transform.
    {
        quad::Contour d1;
        d1.add_line(cplx(0.0, K), cplx(0.0, 0.0));
        d1.add_line(cplx(0.0, 0.0), cplx(K, 0.0));
        const auto ns = quad::make_nodes(d1, opt.rad_per_panel, rate);
        std::vector<cplx> qhm(ns.z.size());
        parallel_for(ns.z.size(), opt.threads, [&](std::size_t i) { qhm[i] = qhat0(-ns.z[i]); });
        std::vector<cplx> ghat(ns.z.size(), cplx{});
        std::vector<double> t_done(ns.z.size(), 0.0);

        std::vector<std::size_t> t_order(ts.size());
        for (std::size_t i = 0; i < t_order.size(); ++i) t_order[i] = i;
        std::sort(t_order.begin(), t_order.end(), [&](auto a, auto b) { return ts[a] < ts[b]; });
        for (std::size_t jt : t_order) {
            const double t = ts[jt];
            parallel_for(ns.z.size(), opt.threads, [&](std::size_t i) {
                if (t <= t_done[i]) return;
                const cplx k = ns.z[i];
                const cplx ik2 = I * k * k;
                const auto tn = quad::gauss_panels(
                    t_done[i], t, opt.inner_rad_per_panel,
                    [&](double) { return std::abs(std::real(k * k)) + 2.0; });
                cplx acc{};
                for (std::size_t j = 0; j < tn.x.size(); ++j)
                    acc += tn.w[j] * std::exp(ik2 * tn.x[j]) * g(tn.x[j]);
                ghat[i] += acc;
                t_done[i] = t;
            });
            for (std::size_t i = 0; i < ns.z.size(); ++i) {
                const cplx k = ns.z[i];
                const cplx gh = dirichlet ? 2.0 * k * ghat[i] - qhm[i]
                                          : qhm[i] - 2.0 * I * ghat[i];
                const cplx w =
                    ns.w_kronrod[i] / (2.0 * PI) * std::exp(-I * k * k * ts[jt]) * gh;
                for (std::size_t ix = 0; ix < xs.size(); ++ix)
                    field.at(ix, jt) += w * std::exp(I * k * xs[ix]);
            }
        }
    }

    // Analytic completion of the truncated boundary tail, matching the
    // contour shape used above.
    if (opt.tail_correction) {
        for (std::size_t jt = 0; jt < ts.size(); ++jt) {
            const cplx gval = g(ts[jt]);
            if (std::abs(gval) == 0.0) continue;
            for (std::size_t ix = 0; ix < xs.size(); ++ix) {
                const double x = xs[ix];
                const double z = K * x;
                const double si_tail = PI / 2 - special::sine_integral(z);
                cplx corr;
                if (dirichlet) {
                    corr = gval / PI * cplx(si_tail, special::ci_plus_e1(z));
                } else {
                    const double re = std::cos(z) / K - x * si_tail;
                    const double im =
                        z > 0 ? std::sin(z) / K - x * special::cosine_integral(z) +
                                    std::exp(-z) / K - x * special::expint_e1(z)
                              : 2.0 / K;
                    corr = -gval / PI * cplx(re, im);
                }
                field.at(ix, jt) += corr;
            }
        }
    }
    field.diagnostics.notes.push_back("k_max=" + std::to_string(K));
    return field;
}

double global_relation_residual(const JostEvaluator& jost, const ComplexFn& q_at_t,
                                double q_support, const ComplexFn& q0, double q0_support,
                                const ComplexFn& g0_trace, const ComplexFn& g1_trace,
                                std::span<const double> k_grid, double t) {
    double worst = 0.0;
    for (double kr : k_grid) {
        const cplx k(kr, 0.0);
        const double krate = std::abs(k) + 2.0;
        auto tilde = [&](const ComplexFn& f, double support) {
            const auto dn =
                quad::gauss_panels(0.0, support, 6.0, [&](double) { return krate; });
            const auto m = jost.psi_factored(k, dn.x);
            cplx acc{};
            for (std::size_t i = 0; i < dn.x.size(); ++i)
                acc += dn.w[i] * f(dn.x[i]) * m[i].value * std::exp(I * k * dn.x[i]);
            return acc;
        };
        const cplx qt_t = tilde(q_at_t, q_support);
        const cplx qt_0 = tilde(q0, q0_support);
        const double x0[1] = {0.0};
        const JostPair m0 = jost.psi_factored(k, x0)[0];
        const cplx psi0 = m0.value;
        const cplx psix0 = m0.deriv + I * k * m0.value;
        const cplx g0h = time_transform(g0_trace, k, t);
        const cplx g1h = time_transform(g1_trace, k, t);
        const cplx res = std::exp(I * k * k * t) * qt_t - qt_0 - I * psix0 * g0h + I * psi0 * g1h;
        worst = std::max(worst, std::abs(res));
    }
    return worst;
}

double schrodinger_pde_residual(const FieldSample& field, const Potential& potential) {
    const auto& xs = field.axis1;
    const auto& ts = field.axis2;
    if (xs.size() < 3 || ts.size() < 3) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        const double dxp = xs[i + 1] - xs[i], dxm = xs[i] - xs[i - 1];
        for (std::size_t j = 1; j + 1 < ts.size(); ++j) {
            const double dtp = ts[j + 1] - ts[j], dtm = ts[j] - ts[j - 1];
            const cplx qxx = 2.0 * (dxm * field.at(i + 1, j) - (dxp + dxm) * field.at(i, j) +
                                    dxp * field.at(i - 1, j)) /
                             (dxp * dxm * (dxp + dxm));
            const cplx qt = (field.at(i, j + 1) - field.at(i, j - 1)) / (dtp + dtm);
            const cplx res = I * qt + qxx + potential(xs[i]) * field.at(i, j);
            worst = std::max(worst, std::abs(res));
        }
    }
    return worst;
}

}  // namespace ut
