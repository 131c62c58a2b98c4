#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "unitransform/config.hpp"
#include "unitransform/errors.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    double tol = 0.0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON configuration file")->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--tol", args.tol, "override the verification tolerance");
}

int dispatch(const CommonArgs& args, const std::string& action,
             const std::string& bc = "", const std::string& rep = "",
             const std::string& suite = "") {
    ut::cli::RunConfig cfg = ut::cli::load_config(args.config_path);
    if (args.tol > 0.0) cfg.tolerances.verify = args.tol;
    if (!bc.empty()) cfg.schrodinger.bc = bc;
    if (!rep.empty()) cfg.schrodinger.representation = rep;
    if (!suite.empty()) cfg.verify_suite = suite;
    return ut::cli::run(cfg, action, args.out_dir);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unified-transform solver for variable-coefficient boundary value problems"};
    app.require_subcommand(1);

    CommonArgs scattering_args;
    auto* scattering = app.add_subcommand("scattering", "spectral functions a(k), b(k)");
    add_common(scattering, scattering_args);

    auto* solve = app.add_subcommand("solve", "solve a boundary value problem");
    solve->require_subcommand(1);
    CommonArgs ssch_args;
    std::string bc, rep;
    auto* ssch = solve->add_subcommand("schrodinger", "half-line evolution problem");
    add_common(ssch, ssch_args);
    ssch->add_option("--bc", bc, "dirichlet|neumann")
        ->check(CLI::IsMember({"dirichlet", "neumann"}));
    ssch->add_option("--representation", rep, "direct|deformed|longtime|sine")
        ->check(CLI::IsMember({"direct", "deformed", "longtime", "sine"}));
    CommonArgs slap_args;
    auto* slap = solve->add_subcommand("laplace", "quarter-plane problem (algebraic case)");
    add_common(slap, slap_args);

    auto* laplace = app.add_subcommand("laplace", "quarter-plane utilities");
    laplace->require_subcommand(1);
    CommonArgs rh_args;
    auto* rh = laplace->add_subcommand("rh-jump", "jump data of the boundary-transform problem");
    add_common(rh, rh_args);

    auto* oracle = app.add_subcommand("oracle", "finite-difference reference solvers");
    oracle->require_subcommand(1);
    CommonArgs osch_args, olap_args;
    auto* osch = oracle->add_subcommand("schrodinger", "Crank-Nicolson reference");
    add_common(osch, osch_args);
    auto* olap = oracle->add_subcommand("laplace", "five-point reference");
    add_common(olap, olap_args);

    CommonArgs verify_args;
    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("suite", suite, "all|completeness|unitarity|global-relation")
        ->check(CLI::IsMember({"all", "completeness", "unitarity", "global-relation"}));
    add_common(verify, verify_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (scattering->parsed()) return dispatch(scattering_args, "scattering");
        if (ssch->parsed()) return dispatch(ssch_args, "solve-schrodinger", bc, rep);
        if (slap->parsed()) return dispatch(slap_args, "solve-laplace");
        if (rh->parsed()) return dispatch(rh_args, "rh-jump");
        if (osch->parsed()) return dispatch(osch_args, "oracle-schrodinger");
        if (olap->parsed()) return dispatch(olap_args, "oracle-laplace");
        if (verify->parsed()) return dispatch(verify_args, "verify", "", "", suite);
    } catch (const ut::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ut::SolverError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 3;
    }
    return 0;
}
