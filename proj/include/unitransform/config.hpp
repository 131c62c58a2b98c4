#pragma once

#include <optional>
#include <string>

#include "unitransform/common.hpp"
#include "unitransform/potential.hpp"
#include "unitransform/schrodinger.hpp"

namespace ut::cli {

struct DataSpec {
    std::string kind = "zero";  // zero | gaussian | exp | xexp | sine_exp | csv
    double amplitude = 1.0;
    double center = 4.0;
    double sigma = 0.8;
    double rate = 1.0;
    std::string path;
};

struct GridSpec {
    double min = 0.0;
    double max = 10.0;
    std::size_t n = 101;
};

struct PotentialSpec {
    std::string kind = "zero";  // zero | sech2 | csv
    double p = 1.0;
    double x0 = 2.0;
    std::string path;
    std::string domain = "half_line";  // half_line | full_line
};

struct SchrodingerSpec {
    std::string bc = "dirichlet";
    std::string representation = "direct";  // direct | deformed | longtime | sine
    DataSpec q0;
    std::optional<DataSpec> g0;
    std::optional<DataSpec> g1;
    GridSpec x{0.0, 10.0, 101};
    GridSpec t{0.0, 1.0, 11};
};

struct LaplaceSpec {
    double beta = 0.0;
    double gamma1 = -1.0;
    double gamma2 = 0.0;
    DataSpec f;
    DataSpec g;
    GridSpec x{0.0, 6.0, 61};
    GridSpec y{0.0, 6.0, 61};
    GridSpec rh_s{0.2, 20.0, 80};  // imaginary-axis grid for jump data
};

struct ScatteringSpec {
    double k_min = 0.1;
    double k_max = 10.0;
    std::size_t n = 100;
};

struct OracleSpec {
    double dx = 0.02;
    double dt = 0.002;
    double dy = 0.05;
    double x_max = 30.0;
    double t_max = 1.0;
    double y_max = 12.0;
    std::string truncation = "dirichlet_zero";
};

struct Tolerances {
    double ode = 1e-10;
    double quadrature = 1e-9;
    double truncation = 1e-10;
    double k_zero_cutoff = 1e-3;
    double verify = 0.0;  // 0: per-check defaults
};

struct RunConfig {
    std::string problem;  // schrodinger | laplace | scattering | completeness | verify
    PotentialSpec potential;
    SchrodingerSpec schrodinger;
    LaplaceSpec laplace;
    ScatteringSpec scattering;
    OracleSpec oracle;
    std::string verify_suite = "all";
    Tolerances tolerances;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config_json(const std::string& text);

Potential build_potential(const PotentialSpec& spec, double truncation_tol);
std::pair<ComplexFn, double> build_complex_data(const DataSpec& spec);
std::pair<RealFn, double> build_real_data(const DataSpec& spec);
std::vector<double> build_grid(const GridSpec& spec);

/// Executes one CLI action ("scattering", "solve-schrodinger",
/// "solve-laplace", "rh-jump", "oracle-schrodinger", "oracle-laplace",
/// "verify") against the configuration, writing artifacts into out_dir.
/// Returns the process exit status (nonzero when a requested verification
/// exceeds its tolerance).
int run(const RunConfig& config, const std::string& action, const std::string& out_dir);

}  // namespace ut::cli
