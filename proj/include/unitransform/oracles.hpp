#pragma once

#include <span>
#include <vector>

#include "unitransform/common.hpp"
#include "unitransform/field.hpp"
#include "unitransform/potential.hpp"
#include "unitransform/schrodinger.hpp"

namespace ut::oracles {

/// Finite-difference reference solvers. These never touch the spectral
/// machinery; independence from it is their purpose.

enum class Truncation { dirichlet_zero, extrapolated };

struct CnConfig {
    double dx = 0.01;
    double dt = 0.001;
    double x_max = 30.0;
    double t_max = 1.0;
    Truncation truncation = Truncation::dirichlet_zero;
};

struct CnResult {
    FieldSample field;             // on the requested output grid
    std::vector<double> trace_t;   // every time step
    std::vector<cplx> trace_q0;    // q(0, t)
    std::vector<cplx> trace_qx0;   // q_x(0, t)
    std::vector<double> mass;      // int |q|^2 dx at every step
    double leakage = 0.0;          // max |q| next to the far boundary
};

/// Crank-Nicolson scheme for i q_t + q_xx + u q = 0 on [0, x_max] with the
/// given boundary condition at x = 0 and a truncation condition at x_max.
CnResult crank_nicolson_halfline(const Potential& potential, const ComplexFn& q0,
                                 const ComplexFn& bdatum, BcKind bc, const CnConfig& config,
                                 std::span<const double> out_xs, std::span<const double> out_ts);

struct LaplaceFdConfig {
    double dx = 0.05;
    double dy = 0.05;
    double x_max = 12.0;
    double y_max = 12.0;
    Truncation truncation = Truncation::dirichlet_zero;
};

struct LaplaceFdResult {
    FieldSample field;  // axis1 = x, axis2 = y, on the requested output grid
    std::vector<double> trace_x, trace_y;
    std::vector<double> q_y0;    // q(x, 0)
    std::vector<double> qy_y0;   // q_y(x, 0)
    std::vector<double> q_x0;    // q(0, y)
    std::vector<double> qx_x0;   // q_x(0, y)
    double leakage = 0.0;
    double solve_residual = 0.0;
};

/// Five-point scheme for q_xx + q_yy + u(x) q = source with the Poincare rows
///   q_y(x,0) + gamma1 q(x,0) = f(x),
///   q_x(0,y) + beta q_y(0,y) + gamma2 q(0,y) = g(y)
/// discretized by one-sided second-order differences.
LaplaceFdResult laplace_fd_quarterplane(const Potential& potential, const RealFn& f,
                                        const RealFn& g, double beta, double gamma1,
                                        double gamma2, const LaplaceFdConfig& config,
                                        std::span<const double> out_xs,
                                        std::span<const double> out_ys,
                                        const std::function<double(double, double)>& source =
                                            nullptr);

/// Bound-state momenta p (eigenvalues -p^2 of -d2/dx2 - u) from a dense
/// tridiagonal eigensolve on [lo, hi].
std::vector<double> fd_bound_state_ps(const RealFn& u, double lo, double hi, int n);

/// Free-space evolution of a Gaussian initial condition under i q_t + q_xx = 0.
cplx free_gaussian_evolution(double x, double t, double center, double sigma);

}  // namespace ut::oracles
