#include "unitransform/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "unitransform/errors.hpp"
#include "unitransform/table.hpp"

namespace ut::cli {

using nlohmann::json;

namespace {

void expect_object(const json& j, const std::string& what) {
    if (!j.is_object()) throw ConfigError(what + " must be a JSON object");
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config field '" + key + "' has the wrong type");
    }
}

DataSpec parse_data(const json& j, const std::string& what) {
    expect_object(j, what);
    DataSpec d;
    d.kind = get_or<std::string>(j, "kind", "zero");
    d.amplitude = get_or(j, "amplitude", d.amplitude);
    d.center = get_or(j, "center", d.center);
    d.sigma = get_or(j, "sigma", d.sigma);
    d.rate = get_or(j, "rate", d.rate);
    d.path = get_or<std::string>(j, "path", "");
    if (d.kind != "zero" && d.kind != "gaussian" && d.kind != "exp" && d.kind != "xexp" &&
        d.kind != "sine_exp" && d.kind != "csv")
        throw ConfigError(what + ": unknown data kind '" + d.kind + "'");
    if (d.kind == "csv" && d.path.empty()) throw ConfigError(what + ": csv data needs a path");
    if (d.kind == "gaussian" && !(d.sigma > 0.0))
        throw ConfigError(what + ": gaussian data needs sigma > 0");
    if ((d.kind == "exp" || d.kind == "xexp" || d.kind == "sine_exp") && !(d.rate > 0.0))
        throw ConfigError(what + ": exponential data needs rate > 0");
    return d;
}

GridSpec parse_grid(const json& j, const std::string& what, GridSpec fallback) {
    if (j.is_null()) return fallback;
    expect_object(j, what);
    GridSpec g = fallback;
    g.min = get_or(j, "min", g.min);
    g.max = get_or(j, "max", g.max);
    g.n = get_or<std::size_t>(j, "n", g.n);
    if (!(g.max >= g.min) || g.n < 1) throw ConfigError(what + ": invalid grid");
    return g;
}

}  // namespace

RunConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    expect_object(j, "config");
    RunConfig cfg;
    cfg.problem = get_or<std::string>(j, "problem", "");

    if (j.contains("potential")) {
        const auto& p = j.at("potential");
        expect_object(p, "potential");
        cfg.potential.kind = get_or<std::string>(p, "kind", "zero");
        cfg.potential.p = get_or(p, "p", cfg.potential.p);
        cfg.potential.x0 = get_or(p, "x0", cfg.potential.x0);
        cfg.potential.path = get_or<std::string>(p, "path", "");
        cfg.potential.domain = get_or<std::string>(p, "domain", "half_line");
        if (cfg.potential.kind != "zero" && cfg.potential.kind != "sech2" &&
            cfg.potential.kind != "csv")
            throw ConfigError("unknown potential kind '" + cfg.potential.kind + "'");
        if (cfg.potential.domain != "half_line" && cfg.potential.domain != "full_line")
            throw ConfigError("potential domain must be half_line or full_line");
        if (cfg.potential.kind == "csv" && cfg.potential.path.empty())
            throw ConfigError("csv potential needs a path");
    }

    if (j.contains("schrodinger")) {
        const auto& s = j.at("schrodinger");
        expect_object(s, "schrodinger");
        cfg.schrodinger.bc = get_or<std::string>(s, "bc", "dirichlet");
        if (cfg.schrodinger.bc != "dirichlet" && cfg.schrodinger.bc != "neumann")
            throw ConfigError("schrodinger.bc must be dirichlet or neumann");
        cfg.schrodinger.representation =
            get_or<std::string>(s, "representation", "direct");
        bool rep_ok = false;
        for (const char* rep : {"direct", "deformed", "longtime", "sine"})
            rep_ok = rep_ok || cfg.schrodinger.representation == rep;
        if (!rep_ok)
            throw ConfigError("unknown representation '" + cfg.schrodinger.representation +
                              "'");
        if (s.contains("q0")) cfg.schrodinger.q0 = parse_data(s.at("q0"), "q0");
        if (s.contains("g0") && !s.at("g0").is_null())
            cfg.schrodinger.g0 = parse_data(s.at("g0"), "g0");
        if (s.contains("g1") && !s.at("g1").is_null())
            cfg.schrodinger.g1 = parse_data(s.at("g1"), "g1");
        if (s.contains("grid")) {
            const auto& g = s.at("grid");
            expect_object(g, "schrodinger.grid");
            cfg.schrodinger.x = parse_grid(g.value("x", json()), "grid.x", cfg.schrodinger.x);
            cfg.schrodinger.t = parse_grid(g.value("t", json()), "grid.t", cfg.schrodinger.t);
        }
        if (cfg.schrodinger.bc == "dirichlet" && cfg.schrodinger.g1 && !cfg.schrodinger.g0)
            throw ConfigError("dirichlet problem takes g0, not g1");
        if (cfg.schrodinger.bc == "neumann" && cfg.schrodinger.g0 && !cfg.schrodinger.g1)
            throw ConfigError("neumann problem takes g1, not g0");
    }

    if (j.contains("laplace")) {
        const auto& l = j.at("laplace");
        expect_object(l, "laplace");
        cfg.laplace.beta = get_or(l, "beta", cfg.laplace.beta);
        cfg.laplace.gamma1 = get_or(l, "gamma1", cfg.laplace.gamma1);
        cfg.laplace.gamma2 = get_or(l, "gamma2", cfg.laplace.gamma2);
        if (l.contains("f")) cfg.laplace.f = parse_data(l.at("f"), "f");
        if (l.contains("g")) cfg.laplace.g = parse_data(l.at("g"), "g");
        if (l.contains("grid")) {
            const auto& g = l.at("grid");
            expect_object(g, "laplace.grid");
            cfg.laplace.x = parse_grid(g.value("x", json()), "grid.x", cfg.laplace.x);
            cfg.laplace.y = parse_grid(g.value("y", json()), "grid.y", cfg.laplace.y);
        }
        if (l.contains("rh_s"))
            cfg.laplace.rh_s = parse_grid(l.at("rh_s"), "laplace.rh_s", cfg.laplace.rh_s);
    }

    if (j.contains("scattering")) {
        const auto& s = j.at("scattering");
        expect_object(s, "scattering");
        cfg.scattering.k_min = get_or(s, "k_min", cfg.scattering.k_min);
        cfg.scattering.k_max = get_or(s, "k_max", cfg.scattering.k_max);
        cfg.scattering.n = get_or<std::size_t>(s, "n", cfg.scattering.n);
        if (!(cfg.scattering.k_max > cfg.scattering.k_min) || cfg.scattering.n < 2)
            throw ConfigError("invalid scattering k grid");
    }

    if (j.contains("oracle")) {
        const auto& o = j.at("oracle");
        expect_object(o, "oracle");
        cfg.oracle.dx = get_or(o, "dx", cfg.oracle.dx);
        cfg.oracle.dt = get_or(o, "dt", cfg.oracle.dt);
        cfg.oracle.dy = get_or(o, "dy", cfg.oracle.dy);
        cfg.oracle.x_max = get_or(o, "x_max", cfg.oracle.x_max);
        cfg.oracle.t_max = get_or(o, "t_max", cfg.oracle.t_max);
        cfg.oracle.y_max = get_or(o, "y_max", cfg.oracle.y_max);
        cfg.oracle.truncation = get_or<std::string>(o, "truncation", cfg.oracle.truncation);
        if (!(cfg.oracle.dx > 0.0) || !(cfg.oracle.dt > 0.0) || !(cfg.oracle.dy > 0.0))
            throw ConfigError("oracle steps must be positive");
        if (cfg.oracle.truncation != "dirichlet_zero" && cfg.oracle.truncation != "extrapolated")
            throw ConfigError("oracle truncation must be dirichlet_zero or extrapolated");
    }

    if (j.contains("verify")) {
        const auto& v = j.at("verify");
        expect_object(v, "verify");
        cfg.verify_suite = get_or<std::string>(v, "suite", "all");
    }

    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        expect_object(t, "tolerances");
        cfg.tolerances.ode = get_or(t, "ode", cfg.tolerances.ode);
        cfg.tolerances.quadrature = get_or(t, "quadrature", cfg.tolerances.quadrature);
        cfg.tolerances.truncation = get_or(t, "truncation", cfg.tolerances.truncation);
        cfg.tolerances.k_zero_cutoff = get_or(t, "k_zero_cutoff", cfg.tolerances.k_zero_cutoff);
        cfg.tolerances.verify = get_or(t, "verify", cfg.tolerances.verify);
        for (double v : {cfg.tolerances.ode, cfg.tolerances.quadrature,
                         cfg.tolerances.truncation, cfg.tolerances.k_zero_cutoff})
            if (!(v > 0.0)) throw ConfigError("tolerances must be positive");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

Potential build_potential(const PotentialSpec& spec, double truncation_tol) {
    const DomainKind domain =
        spec.domain == "full_line" ? DomainKind::full_line : DomainKind::half_line;
    if (spec.kind == "zero") return make_zero(domain);
    if (spec.kind == "sech2")
        return make_sech2({spec.p, spec.x0}, domain, truncation_tol);
    return load_potential_csv(spec.path, domain);
}

std::pair<ComplexFn, double> build_complex_data(const DataSpec& spec) {
    if (spec.kind == "zero") return {[](double) { return cplx{}; }, 1.0};
    if (spec.kind == "gaussian") {
        const double a = spec.amplitude, c = spec.center, s = spec.sigma;
        return {[a, c, s](double x) { return cplx(a * std::exp(-(x - c) * (x - c) / (2 * s * s))); },
                c + 8.0 * s};
    }
    if (spec.kind == "exp") {
        const double a = spec.amplitude, r = spec.rate;
        return {[a, r](double x) { return cplx(a * std::exp(-r * x)); }, 33.0 / r};
    }
    if (spec.kind == "xexp") {
        const double a = spec.amplitude, r = spec.rate;
        return {[a, r](double x) { return cplx(a * x * std::exp(-r * x)); }, 38.0 / r};
    }
    if (spec.kind == "sine_exp") {
        const double a = spec.amplitude, r = spec.rate;
        return {[a, r](double x) { return cplx(a * std::sin(x) * std::exp(-r * x)); }, 38.0 / r};
    }
    const ComplexTable table = load_complex_table_csv(spec.path);
    return {[table](double x) { return table(x); }, table.x_max()};
}

std::pair<RealFn, double> build_real_data(const DataSpec& spec) {
    auto [fn, support] = build_complex_data(spec);
    return {[fn](double x) { return std::real(fn(x)); }, support};
}

std::vector<double> build_grid(const GridSpec& spec) {
    return linspace(spec.min, spec.max, spec.n);
}

}  // namespace ut::cli
