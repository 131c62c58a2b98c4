#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "unitransform/completeness.hpp"
#include "unitransform/config.hpp"
#include "unitransform/errors.hpp"
#include "unitransform/io.hpp"
#include "unitransform/laplace.hpp"
#include "unitransform/oracles.hpp"
#include "unitransform/table.hpp"

namespace ut::cli {

using nlohmann::json;

namespace {

struct Report {
    std::ostringstream text;
    json diag = json::object();
    bool failed = false;

    void check(const std::string& name, double value, double tol) {
        const bool ok = value <= tol;
        failed = failed || !ok;
        text << (ok ? "PASS " : "FAIL ") << name << "  value=" << io::format_double(value)
             << "  tol=" << io::format_double(tol) << '\n';
        diag["checks"][name] = {{"value", value}, {"tol", tol}, {"pass", ok}};
    }
    void info(const std::string& line) { text << line << '\n'; }
};

std::string out_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

double verify_tol(const RunConfig& cfg, double fallback) {
    return cfg.tolerances.verify > 0.0 ? cfg.tolerances.verify : fallback;
}

SchrodingerData build_schrodinger_data(const RunConfig& cfg) {
    SchrodingerData data;
    auto [q0, q0s] = build_complex_data(cfg.schrodinger.q0);
    data.q0 = q0;
    data.q0_support = q0s;
    data.bc = cfg.schrodinger.bc == "neumann" ? BcKind::neumann : BcKind::dirichlet;
    if (data.bc == BcKind::dirichlet) {
        if (!cfg.schrodinger.g0) throw ConfigError("dirichlet run needs schrodinger.g0");
        data.g0 = build_complex_data(*cfg.schrodinger.g0).first;
    } else {
        if (!cfg.schrodinger.g1) throw ConfigError("neumann run needs schrodinger.g1");
        data.g1 = build_complex_data(*cfg.schrodinger.g1).first;
    }
    return data;
}

SchrodingerOptions solver_options(const RunConfig& cfg) {
    SchrodingerOptions opt;
    opt.ode_tol = cfg.tolerances.ode;
    return opt;
}

int run_scattering(const RunConfig& cfg, const std::string& out_dir) {
    Report rep;
    const Potential pot = build_potential(cfg.potential, cfg.tolerances.truncation);
    JostEvaluator jost(pot, cfg.tolerances.ode);
    ScatteringOptions sopt;
    sopt.k_zero_cutoff = cfg.tolerances.k_zero_cutoff;
    ScatteringEvaluator scat(jost, sopt);

    std::vector<io::ScatteringRow> rows;
    double unitarity = 0.0;
    for (std::size_t i = 0; i < cfg.scattering.n; ++i) {
        const double k = cfg.scattering.k_min +
                         (cfg.scattering.k_max - cfg.scattering.k_min) * double(i) /
                             double(cfg.scattering.n - 1);
        if (std::abs(k) < cfg.tolerances.k_zero_cutoff) continue;
        const cplx a = scat.a(cplx(k, 0.0));
        const cplx b = scat.b(k);
        rows.push_back({cplx(k, 0.0), a, b});
        unitarity = std::max(unitarity, std::abs(std::norm(a) - std::norm(b) - 1.0));
    }
    io::write_scattering_csv(out_path(out_dir, "scattering.csv"), rows);

    const auto data = scat.data();
    rep.diag["bound_states"] = data.bound_states;
    rep.diag["psi0_zeros"] = data.psi0_zeros;
    rep.diag["psix0_zeros"] = data.psix0_zeros;
    {
        json ad = json::array();
        for (const auto& z : data.a_dot) ad.push_back({std::real(z), std::imag(z)});
        rep.diag["a_dot"] = ad;
    }
    rep.check("unitarity |a|^2-|b|^2=1", unitarity, verify_tol(cfg, 1e-8));

    if (cfg.potential.kind == "sech2" && cfg.potential.domain == "full_line") {
        // closed forms of the reflectionless well
        const double p = cfg.potential.p, x0 = cfg.potential.x0;
        double worst = 0.0;
        for (double k = 0.1; k <= 10.0; k += 0.7) {
            const cplx A = scat.a(cplx(k, 0.0));
            const cplx Aref = (cplx(k, 0.0) - I * p) / (cplx(k, 0.0) + I * p);
            worst = std::max(worst, std::abs(A - Aref));
            for (double x : {0.0, 1.3, 4.9, 8.2}) {
                const cplx psi = jost.psi_at(cplx(k, 0.0), x).value;
                const cplx ref = (cplx(k, 0.0) + I * p * std::tanh(p * (x - x0))) /
                                 (cplx(k, 0.0) + I * p) * std::exp(I * cplx(k, 0.0) * x);
                worst = std::max(worst, std::abs(psi - ref));
            }
        }
        rep.check("reflectionless closed-form regression", worst, verify_tol(cfg, 1e-6));
    }

    io::write_text(out_path(out_dir, "report.txt"), rep.text.str());
    io::write_text(out_path(out_dir, "diagnostics.json"), rep.diag.dump(2) + "\n");
    return rep.failed ? 1 : 0;
}

int run_solve_schrodinger(const RunConfig& cfg, const std::string& out_dir) {
    Report rep;
    const Potential pot = build_potential(cfg.potential, cfg.tolerances.truncation);
    const SchrodingerData data = build_schrodinger_data(cfg);
    SchrodingerSolver solver(pot, data, solver_options(cfg));
    const auto xs = build_grid(cfg.schrodinger.x);
    const auto ts = build_grid(cfg.schrodinger.t);

    Representation r = Representation::direct;
    if (cfg.schrodinger.representation == "deformed") r = Representation::deformed;
    if (cfg.schrodinger.representation == "longtime") r = Representation::longtime;
    if (cfg.schrodinger.representation == "sine") r = Representation::sine;

    FieldSample field = solver.solve(r, xs, ts);
    field.diagnostics.pde_residual = schrodinger_pde_residual(field, pot);
    io::write_evolution_field_csv(out_path(out_dir, "field.csv"), field);

    rep.diag["representation"] = cfg.schrodinger.representation;
    rep.diag["bound_states"] = solver.scattering().bound_states;
    rep.diag["pde_residual"] = field.diagnostics.pde_residual;
    rep.diag["notes"] = field.diagnostics.notes;
    rep.info("solved schrodinger (" + cfg.schrodinger.representation + ") on " +
             std::to_string(xs.size()) + "x" + std::to_string(ts.size()) + " grid");
    io::write_text(out_path(out_dir, "report.txt"), rep.text.str());
    io::write_text(out_path(out_dir, "diagnostics.json"), rep.diag.dump(2) + "\n");
    return 0;
}

int run_solve_laplace(const RunConfig& cfg, const std::string& out_dir) {
    Report rep;
    if (cfg.laplace.beta != 0.0)
        throw ConfigError("solve laplace handles the algebraic case beta = 0; "
                          "use 'laplace rh-jump' for beta != 0");
    if (!(cfg.laplace.gamma1 < 0.0))
        throw ConfigError("the algebraic quarter-plane path requires gamma1 < 0; the "
                          "reflection pole otherwise contributes and is out of scope");
    const Potential pot = build_potential(cfg.potential, cfg.tolerances.truncation);
    LaplaceData data;
    auto [f, fs] = build_real_data(cfg.laplace.f);
    auto [g, gs] = build_real_data(cfg.laplace.g);
    data.f = f;
    data.g = g;
    data.f_support = fs;
    data.g_support = gs;
    data.beta = cfg.laplace.beta;
    data.gamma1 = cfg.laplace.gamma1;
    data.gamma2 = cfg.laplace.gamma2;
    LaplaceOptions lopt;
    lopt.ode_tol = cfg.tolerances.ode;
    LaplaceSolver solver(pot, data, lopt);
    const auto xs = build_grid(cfg.laplace.x);
    const auto ys = build_grid(cfg.laplace.y);
    FieldSample field = solver.solve_algebraic(xs, ys);
    field.diagnostics.pde_residual = laplace_pde_residual(field, pot);
    io::write_elliptic_field_csv(out_path(out_dir, "field.csv"), field);
    rep.diag["pde_residual"] = field.diagnostics.pde_residual;
    rep.diag["max_abs_imag"] = max_abs_imag(field);
    rep.diag["notes"] = field.diagnostics.notes;
    rep.check("reality max|Im q|", max_abs_imag(field), verify_tol(cfg, 1e-8));
    io::write_text(out_path(out_dir, "report.txt"), rep.text.str());
    io::write_text(out_path(out_dir, "diagnostics.json"), rep.diag.dump(2) + "\n");
    return rep.failed ? 1 : 0;
}

int run_rh_jump(const RunConfig& cfg, const std::string& out_dir) {
    Report rep;
    const Potential pot = build_potential(cfg.potential, cfg.tolerances.truncation);
    LaplaceData data;
    auto [f, fs] = build_real_data(cfg.laplace.f);
    auto [g, gs] = build_real_data(cfg.laplace.g);
    data.f = f;
    data.g = g;
    data.f_support = fs;
    data.g_support = gs;
    data.beta = cfg.laplace.beta;
    data.gamma1 = cfg.laplace.gamma1;
    data.gamma2 = cfg.laplace.gamma2;
    LaplaceOptions lopt;
    lopt.ode_tol = cfg.tolerances.ode;
    LaplaceSolver solver(pot, data, lopt);

    std::ostringstream csv;
    csv << "s,re_J,im_J,re_F,im_F,re_D,im_D,re_q00_coeff,im_q00_coeff\n";
    const auto ss = build_grid(cfg.laplace.rh_s);
    for (double s : ss) {
        const cplx k(0.0, s);
        const cplx Jv = solver.J(k);
        const cplx Fv = solver.F(k);
        const cplx Dv = solver.D(k);
        const cplx coeff = data.beta == 0.0
                               ? cplx{}
                               : 2.0 * k * data.beta * solver.jost().psi_at(k, 0.0).value /
                                     ((k - data.gamma1) * Dv);
        csv << io::format_double(s) << ',' << io::format_double(std::real(Jv)) << ','
            << io::format_double(std::imag(Jv)) << ',' << io::format_double(std::real(Fv))
            << ',' << io::format_double(std::imag(Fv)) << ','
            << io::format_double(std::real(Dv)) << ',' << io::format_double(std::imag(Dv))
            << ',' << io::format_double(std::real(coeff)) << ','
            << io::format_double(std::imag(coeff)) << '\n';
    }
    io::write_text(out_path(out_dir, "rh_jump.csv"), csv.str());
    rep.info("jump data written for " + std::to_string(ss.size()) + " points");
    io::write_text(out_path(out_dir, "report.txt"), rep.text.str());
    io::write_text(out_path(out_dir, "diagnostics.json"), rep.diag.dump(2) + "\n");
    return 0;
}

int run_oracle_schrodinger(const RunConfig& cfg, const std::string& out_dir) {
    const Potential pot = build_potential(cfg.potential, cfg.tolerances.truncation);
    const SchrodingerData data = build_schrodinger_data(cfg);
    oracles::CnConfig oc;
    oc.dx = cfg.oracle.dx;
    oc.dt = cfg.oracle.dt;
    oc.x_max = cfg.oracle.x_max;
    oc.t_max = cfg.oracle.t_max;
    oc.truncation = cfg.oracle.truncation == "extrapolated"
                        ? oracles::Truncation::extrapolated
                        : oracles::Truncation::dirichlet_zero;
    const auto xs = build_grid(cfg.schrodinger.x);
    const auto ts = build_grid(cfg.schrodinger.t);
    const auto res = oracles::crank_nicolson_halfline(
        pot, data.q0, data.bc == BcKind::dirichlet ? data.g0 : data.g1, data.bc, oc, xs, ts);
    io::write_evolution_field_csv(out_path(out_dir, "field.csv"), res.field);
    io::write_complex_trace_csv(out_path(out_dir, "trace_q0t.csv"), "t", res.trace_t,
                                res.trace_q0);
    io::write_complex_trace_csv(out_path(out_dir, "trace_qx0t.csv"), "t", res.trace_t,
                                res.trace_qx0);
    json diag;
    diag["leakage"] = res.leakage;
    Report rep;
    rep.check("domain truncation leakage", res.leakage, 1e-6);
    diag["checks"] = rep.diag["checks"];
    io::write_text(out_path(out_dir, "report.txt"), rep.text.str());
    io::write_text(out_path(out_dir, "diagnostics.json"), diag.dump(2) + "\n");
    return rep.failed ? 1 : 0;
}

int run_oracle_laplace(const RunConfig& cfg, const std::string& out_dir) {
    const Potential pot = build_potential(cfg.potential, cfg.tolerances.truncation);
    auto [f, fs] = build_real_data(cfg.laplace.f);
    auto [g, gs] = build_real_data(cfg.laplace.g);
    (void)fs;
    (void)gs;
    oracles::LaplaceFdConfig oc;
    oc.dx = cfg.oracle.dx == 0.02 ? cfg.oracle.dy : cfg.oracle.dx;
    oc.dy = cfg.oracle.dy;
    oc.x_max = cfg.oracle.x_max;
    oc.y_max = cfg.oracle.y_max;
    oc.truncation = cfg.oracle.truncation == "extrapolated"
                        ? oracles::Truncation::extrapolated
                        : oracles::Truncation::dirichlet_zero;
    const auto xs = build_grid(cfg.laplace.x);
    const auto ys = build_grid(cfg.laplace.y);
    const auto res = oracles::laplace_fd_quarterplane(pot, f, g, cfg.laplace.beta,
                                                      cfg.laplace.gamma1, cfg.laplace.gamma2,
                                                      oc, xs, ys);
    io::write_elliptic_field_csv(out_path(out_dir, "field.csv"), res.field);
    io::write_real_trace_csv(out_path(out_dir, "trace_y0.csv"), "x", res.trace_x, res.q_y0,
                             "q", res.qy_y0, "q_y");
    io::write_real_trace_csv(out_path(out_dir, "trace_x0.csv"), "y", res.trace_y, res.q_x0,
                             "q", res.qx_x0, "q_x");
    json diag;
    diag["leakage"] = res.leakage;
    diag["solve_residual"] = res.solve_residual;
    Report rep;
    rep.check("domain truncation leakage", res.leakage, 1e-6);
    diag["checks"] = rep.diag["checks"];
    io::write_text(out_path(out_dir, "report.txt"), rep.text.str());
    io::write_text(out_path(out_dir, "diagnostics.json"), diag.dump(2) + "\n");
    return rep.failed ? 1 : 0;
}

int run_verify(const RunConfig& cfg, const std::string& out_dir) {
    Report rep;
    const Potential pot = build_potential(cfg.potential, cfg.tolerances.truncation);
    JostEvaluator jost(pot, cfg.tolerances.ode);
    const std::string& suite = cfg.verify_suite;
    const bool all = suite == "all";
    const bool is_zero = cfg.potential.kind == "zero";

    if (all || suite == "unitarity") {
        ScatteringEvaluator scat(jost);
        double unit = 0.0, wron = 0.0, sym = 0.0, agree = 0.0;
        for (double k = 0.1; k <= 20.0; k *= 1.35) {
            const cplx a = scat.a(cplx(k, 0.0));
            const cplx b = scat.b(k);
            unit = std::max(unit, std::abs(std::norm(a) - std::norm(b) - 1.0));
            sym = std::max(sym, std::abs(scat.a(cplx(-k, 0.0) + cplx(0.0, 1e-14)) -
                                          std::conj(a)));
            agree = std::max(agree, std::abs(a - scat.a_alt(cplx(k, 0.0))));
            const double xsup = pot.x_support;
            const cplx w0 = scat.wronskian_a_at(cplx(k, 0.0), 0.0);
            for (double x : {0.5 * xsup, xsup}) {
                const cplx wx = scat.wronskian_a_at(cplx(k, 0.0), x);
                wron = std::max(wron, std::abs(wx - w0) / std::abs(w0));
            }
        }
        rep.check("unitarity", unit, verify_tol(cfg, 1e-8));
        rep.check("wronskian constancy", wron, verify_tol(cfg, 1e-8));
        rep.check("conjugation symmetry a(-k)=conj a(k)", sym, verify_tol(cfg, 1e-8));
        rep.check("a(k) boundary-form agreement", agree, verify_tol(cfg, 1e-8));
    }

    if (all || suite == "completeness") {
        auto bump = [](double x) { return cplx(std::exp(-(x - 4.0) * (x - 4.0) / 1.28)); };
        const auto xs = linspace(0.25, 9.75, 39);
        const auto rec = completeness_reconstruct(bump, 11.0, jost, default_basis(pot), xs);
        double err = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            err = std::max(err, std::abs(rec[i] - bump(xs[i])));
        rep.check("completeness reconstruction", err, verify_tol(cfg, is_zero ? 1e-4 : 1e-3));
    }

    if (all || suite == "global-relation") {
        // Crank-Nicolson data fed back through the global relation.
        SchrodingerData data;
        if (cfg.schrodinger.g0 || cfg.schrodinger.g1 || cfg.schrodinger.q0.kind != "zero") {
            data = build_schrodinger_data(cfg);
        } else {
            data.q0 = [](double x) { return cplx(std::exp(-(x - 4.0) * (x - 4.0) / 1.28)); };
            data.q0_support = 11.0;
            data.bc = BcKind::dirichlet;
            const cplx q00 = data.q0(0.0);
            data.g0 = [q00](double t) { return q00 * std::exp(-t); };
        }
        oracles::CnConfig oc;
        oc.dx = cfg.oracle.dx;
        oc.dt = cfg.oracle.dt;
        oc.x_max = cfg.oracle.x_max;
        const double t_final = 0.5;
        const auto xs_out = linspace(0.0, oc.x_max, 1201);
        const double ts_out[1] = {t_final};
        const auto res = oracles::crank_nicolson_halfline(
            pot, data.q0, data.bc == BcKind::dirichlet ? data.g0 : data.g1, data.bc, oc,
            xs_out, ts_out);
        ComplexTable qt(xs_out, std::vector<cplx>(res.field.values));
        ComplexTable g0t(res.trace_t, res.trace_q0);
        ComplexTable g1t(res.trace_t, res.trace_qx0);
        std::vector<double> kgrid;
        for (double k = 0.25; k <= 6.0; k += 0.75) kgrid.push_back(k);
        const double resid = global_relation_residual(
            jost, [&](double x) { return qt(x); }, oc.x_max, data.q0, data.q0_support,
            [&](double t) { return g0t(t); }, [&](double t) { return g1t(t); }, kgrid,
            t_final);
        rep.check("global relation residual", resid, verify_tol(cfg, is_zero ? 1e-4 : 1e-3));
    }

    io::write_text(out_path(out_dir, "report.txt"), rep.text.str());
    io::write_text(out_path(out_dir, "diagnostics.json"), rep.diag.dump(2) + "\n");
    return rep.failed ? 1 : 0;
}

}  // namespace

int run(const RunConfig& cfg, const std::string& action, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    if (!cfg.problem.empty()) {
        // When the config names a problem it must match the action family.
        const std::string family = action.substr(0, action.find('-'));
        if (action == "scattering" && cfg.problem != "scattering")
            throw ConfigError("config problem '" + cfg.problem + "' does not match action");
        (void)family;
    }
    if (action == "scattering") return run_scattering(cfg, out_dir);
    if (action == "solve-schrodinger") return run_solve_schrodinger(cfg, out_dir);
    if (action == "solve-laplace") return run_solve_laplace(cfg, out_dir);
    if (action == "rh-jump") return run_rh_jump(cfg, out_dir);
    if (action == "oracle-schrodinger") return run_oracle_schrodinger(cfg, out_dir);
    if (action == "oracle-laplace") return run_oracle_laplace(cfg, out_dir);
    if (action == "verify") return run_verify(cfg, out_dir);
    throw ConfigError("unknown action: " + action);
}

}  // namespace ut::cli
