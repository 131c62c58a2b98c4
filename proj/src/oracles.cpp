#include "unitransform/oracles.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>

#include "unitransform/errors.hpp"
#include "unitransform/table.hpp"

namespace ut::oracles {

namespace {

// Thomas algorithm for complex tridiagonal systems; a = sub, b = diag,
// c = super. Overwrites its scratch copies only.
void solve_tridiag(std::span<const cplx> a, std::span<const cplx> b, std::span<const cplx> c,
                   std::vector<cplx>& rhs) {
    const std::size_t n = b.size();
    std::vector<cplx> cp(n), dp(n);
    cplx beta = b[0];
    if (std::abs(beta) < 1e-300) throw LinearSolveFailure("tridiagonal pivot underflow");
    cp[0] = c[0] / beta;
    dp[0] = rhs[0] / beta;
    for (std::size_t i = 1; i < n; ++i) {
        beta = b[i] - a[i] * cp[i - 1];
        if (std::abs(beta) < 1e-300) throw LinearSolveFailure("tridiagonal pivot underflow");
        cp[i] = c[i] / beta;
        dp[i] = (rhs[i] - a[i] * dp[i - 1]) / beta;
    }
    rhs[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = dp[i] - cp[i] * rhs[i + 1];
}

// 4-point Lagrange interpolation of a uniformly sampled complex slice.
cplx interp_slice(std::span<const cplx> v, double dx, double x) {
    const std::size_t n = v.size();
    const double fi = x / dx;
    long i = long(std::floor(fi));
    long s = std::clamp<long>(i - 1, 0, long(n) - 4);
    cplx acc{};
    for (long a = 0; a < 4; ++a) {
        double w = 1.0;
        for (long b = 0; b < 4; ++b) {
            if (a == b) continue;
            w *= (fi - double(s + b)) / double(a - b);
        }
        acc += w * v[std::size_t(s + a)];
    }
    return acc;
}

}  // namespace

CnResult crank_nicolson_halfline(const Potential& potential, const ComplexFn& q0,
                                 const ComplexFn& bdatum, BcKind bc, const CnConfig& config,
                                 std::span<const double> out_xs, std::span<const double> out_ts) {
    if (!(config.dx > 0.0) || !(config.dt > 0.0))
        throw ConfigError("oracle grid steps must be positive");
    const std::size_t nx = std::size_t(std::llround(config.x_max / config.dx));
    const double dx = config.x_max / double(nx);
    const std::size_t n = nx + 1;

    std::vector<double> uvals(n);
    for (std::size_t j = 0; j < n; ++j) uvals[j] = potential(double(j) * dx);

    std::vector<cplx> q(n);
    for (std::size_t j = 0; j < n; ++j) q[j] = q0(double(j) * dx);
    if (bc == BcKind::dirichlet) q[0] = bdatum(0.0);
    q[n - 1] = 0.0;

    CnResult res;
    res.field.axis1.assign(out_xs.begin(), out_xs.end());
    res.field.axis2.assign(out_ts.begin(), out_ts.end());
    res.field.values.assign(out_xs.size() * out_ts.size(), cplx{});

    std::vector<double> sorted_ts(out_ts.begin(), out_ts.end());
    std::sort(sorted_ts.begin(), sorted_ts.end());

    auto record_traces = [&](double t) {
        res.trace_t.push_back(t);
        res.trace_q0.push_back(q[0]);
        if (bc == BcKind::neumann)
            res.trace_qx0.push_back(bdatum(t));
        else
            res.trace_qx0.push_back(
                (-11.0 * q[0] + 18.0 * q[1] - 9.0 * q[2] + 2.0 * q[3]) / (6.0 * dx));
        double m = 0.0;
        for (std::size_t j = 0; j + 1 < n; ++j)
            m += 0.5 * dx * (std::norm(q[j]) + std::norm(q[j + 1]));
        res.mass.push_back(m);
    };

    auto snapshot = [&](std::size_t jt_out) {
        for (std::size_t ix = 0; ix < out_xs.size(); ++ix)
            res.field.at(ix, jt_out) = interp_slice(q, dx, out_xs[ix]);
    };

    record_traces(0.0);
    for (std::size_t jt = 0; jt < out_ts.size(); ++jt)
        if (out_ts[jt] == 0.0) snapshot(jt);

    std::vector<cplx> sub(n), diag(n), sup(n), rhs(n);

    auto step = [&](double t, double dt) {
        // i (q^{n+1} - q^n)/dt = -(L q^{n+1} + L q^n)/2 with L = d_xx + u
        const cplx alpha = I / dt;
        const double inv2 = 1.0 / (dx * dx);
        for (std::size_t j = 1; j + 1 < n; ++j) {
            sub[j] = 0.5 * inv2;
            sup[j] = 0.5 * inv2;
            diag[j] = alpha - inv2 + 0.5 * uvals[j];
            rhs[j] = alpha * q[j] + inv2 * q[j] - 0.5 * uvals[j] * q[j] -
                     0.5 * inv2 * (q[j + 1] + q[j - 1]);
        }
        if (bc == BcKind::dirichlet) {
            diag[0] = 1.0;
            sup[0] = 0.0;
            rhs[0] = bdatum(t + dt);
        } else {
            // ghost-point elimination: (Lq)_0 = (2 q_1 - 2 q_0)/dx^2 + u_0 q_0
            //                                   - 2 g1(t)/dx
            diag[0] = alpha - inv2 + 0.5 * uvals[0];
            sup[0] = inv2;
            rhs[0] = alpha * q[0] + inv2 * q[0] - 0.5 * uvals[0] * q[0] - inv2 * q[1] +
                     (bdatum(t) + bdatum(t + dt)) / dx;
        }
        sub[0] = 0.0;
        sup[n - 1] = 0.0;
        if (config.truncation == Truncation::dirichlet_zero) {
            sub[n - 1] = 0.0;
            diag[n - 1] = 1.0;
            rhs[n - 1] = 0.0;
        } else {
            // zero-gradient truncation row (tridiagonal-compatible)
            sub[n - 1] = -1.0;
            diag[n - 1] = 1.0;
            rhs[n - 1] = 0.0;
        }
        solve_tridiag(sub, diag, sup, rhs);
        q = rhs;
    };

    double t = 0.0;
    for (double target : sorted_ts) {
        while (target - t > 1e-12) {
            const double dt = std::min(config.dt, target - t);
            step(t, dt);
            t += dt;
            record_traces(t);
        }
        for (std::size_t jt = 0; jt < out_ts.size(); ++jt)
            if (std::abs(out_ts[jt] - t) < 1e-12) snapshot(jt);
    }

    res.leakage = 0.0;
    for (std::size_t j = n - std::min<std::size_t>(n, 5); j < n; ++j)
        res.leakage = std::max(res.leakage, std::abs(q[j]));
    return res;
}

LaplaceFdResult laplace_fd_quarterplane(const Potential& potential, const RealFn& f,
                                        const RealFn& g, double beta, double gamma1,
                                        double gamma2, const LaplaceFdConfig& config,
                                        std::span<const double> out_xs,
                                        std::span<const double> out_ys,
                                        const std::function<double(double, double)>& source) {
    if (!(config.dx > 0.0) || !(config.dy > 0.0))
        throw ConfigError("oracle grid steps must be positive");
    const std::size_t nx = std::size_t(std::llround(config.x_max / config.dx));
    const std::size_t ny = std::size_t(std::llround(config.y_max / config.dy));
    const double dx = config.x_max / double(nx);
    const double dy = config.y_max / double(ny);
    const std::size_t N = (nx + 1) * (ny + 1);
    auto id = [&](std::size_t i, std::size_t j) { return i * (ny + 1) + j; };

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(6 * N);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(Eigen::Index(N));

    const double ix2 = 1.0 / (dx * dx), iy2 = 1.0 / (dy * dy);
    for (std::size_t i = 0; i <= nx; ++i) {
        const double x = double(i) * dx;
        for (std::size_t j = 0; j <= ny; ++j) {
            const double y = double(j) * dy;
            const auto row = Eigen::Index(id(i, j));
            const bool far_x = (i == nx), far_y = (j == ny);
            if (far_x || far_y) {
                if (config.truncation == Truncation::dirichlet_zero) {
                    trips.emplace_back(row, row, 1.0);
                } else if (far_x) {
                    trips.emplace_back(row, row, 1.0);
                    trips.emplace_back(row, Eigen::Index(id(i - 1, j)), -2.0);
                    trips.emplace_back(row, Eigen::Index(id(i - 2, j)), 1.0);
                } else {
                    trips.emplace_back(row, row, 1.0);
                    trips.emplace_back(row, Eigen::Index(id(i, j - 1)), -2.0);
                    trips.emplace_back(row, Eigen::Index(id(i, j - 2)), 1.0);
                }
                continue;
            }
            if (j == 0) {
                // q_y(x,0) + gamma1 q(x,0) = f(x), one-sided second order
                trips.emplace_back(row, Eigen::Index(id(i, 0)), -3.0 / (2.0 * dy) + gamma1);
                trips.emplace_back(row, Eigen::Index(id(i, 1)), 4.0 / (2.0 * dy));
                trips.emplace_back(row, Eigen::Index(id(i, 2)), -1.0 / (2.0 * dy));
                b[row] = f(x);
                continue;
            }
            if (i == 0) {
                // q_x(0,y) + beta q_y(0,y) + gamma2 q(0,y) = g(y)
                trips.emplace_back(row, Eigen::Index(id(0, j)), -3.0 / (2.0 * dx) + gamma2);
                trips.emplace_back(row, Eigen::Index(id(1, j)), 4.0 / (2.0 * dx));
                trips.emplace_back(row, Eigen::Index(id(2, j)), -1.0 / (2.0 * dx));
                if (beta != 0.0) {
                    trips.emplace_back(row, Eigen::Index(id(0, j + 1)), beta / (2.0 * dy));
                    trips.emplace_back(row, Eigen::Index(id(0, j - 1)), -beta / (2.0 * dy));
                }
                b[row] = g(y);
                continue;
            }
            trips.emplace_back(row, row, -2.0 * ix2 - 2.0 * iy2 + potential(x));
            trips.emplace_back(row, Eigen::Index(id(i + 1, j)), ix2);
            trips.emplace_back(row, Eigen::Index(id(i - 1, j)), ix2);
            trips.emplace_back(row, Eigen::Index(id(i, j + 1)), iy2);
            trips.emplace_back(row, Eigen::Index(id(i, j - 1)), iy2);
            b[row] = source ? source(x, y) : 0.0;
        }
    }

    const auto dim = static_cast<Eigen::Index>(N);
    Eigen::SparseMatrix<double> A(dim, dim);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) throw LinearSolveFailure("sparse factorization failed");
    Eigen::VectorXd qv = lu.solve(b);
    if (lu.info() != Eigen::Success) throw LinearSolveFailure("sparse solve failed");

    LaplaceFdResult res;
    res.solve_residual = (A * qv - b).norm() / std::max(1e-300, b.norm());
    if (res.solve_residual > 1e-8)
        res.field.diagnostics.notes.push_back("ill-conditioned solve, residual " +
                                              std::to_string(res.solve_residual));

    // Output grid via separable 4-point interpolation.
    res.field.axis1.assign(out_xs.begin(), out_xs.end());
    res.field.axis2.assign(out_ys.begin(), out_ys.end());
    res.field.values.assign(out_xs.size() * out_ys.size(), cplx{});
    std::vector<cplx> col(ny + 1);
    for (std::size_t ix = 0; ix < out_xs.size(); ++ix) {
        // interpolate in x for each j, then in y
        for (std::size_t j = 0; j <= ny; ++j) {
            std::vector<cplx> rowv(nx + 1);
            for (std::size_t i = 0; i <= nx; ++i) rowv[i] = qv[Eigen::Index(id(i, j))];
            col[j] = interp_slice(rowv, dx, out_xs[ix]);
        }
        for (std::size_t jy = 0; jy < out_ys.size(); ++jy)
            res.field.at(ix, jy) = interp_slice(col, dy, out_ys[jy]);
    }

    res.trace_x.resize(nx + 1);
    res.q_y0.resize(nx + 1);
    res.qy_y0.resize(nx + 1);
    for (std::size_t i = 0; i <= nx; ++i) {
        res.trace_x[i] = double(i) * dx;
        res.q_y0[i] = qv[Eigen::Index(id(i, 0))];
        res.qy_y0[i] = (-11.0 * qv[Eigen::Index(id(i, 0))] + 18.0 * qv[Eigen::Index(id(i, 1))] -
                        9.0 * qv[Eigen::Index(id(i, 2))] + 2.0 * qv[Eigen::Index(id(i, 3))]) /
                       (6.0 * dy);
    }
    res.trace_y.resize(ny + 1);
    res.q_x0.resize(ny + 1);
    res.qx_x0.resize(ny + 1);
    for (std::size_t j = 0; j <= ny; ++j) {
        res.trace_y[j] = double(j) * dy;
        res.q_x0[j] = qv[Eigen::Index(id(0, j))];
        res.qx_x0[j] = (-11.0 * qv[Eigen::Index(id(0, j))] + 18.0 * qv[Eigen::Index(id(1, j))] -
                        9.0 * qv[Eigen::Index(id(2, j))] + 2.0 * qv[Eigen::Index(id(3, j))]) /
                       (6.0 * dx);
    }

    for (std::size_t i = 0; i <= nx; ++i)
        res.leakage = std::max(res.leakage, std::abs(qv[Eigen::Index(id(i, ny - 1))]));
    for (std::size_t j = 0; j <= ny; ++j)
        res.leakage = std::max(res.leakage, std::abs(qv[Eigen::Index(id(nx - 1, j))]));
    return res;
}

std::vector<double> fd_bound_state_ps(const RealFn& u, double lo, double hi, int n) {
    const double h = (hi - lo) / double(n + 1);
    Eigen::VectorXd diag(n), sub(n - 1);
    for (int i = 0; i < n; ++i) {
        const double x = lo + h * double(i + 1);
        diag[i] = 2.0 / (h * h) - u(x);
    }
    sub.setConstant(-1.0 / (h * h));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    std::vector<double> ps;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = es.eigenvalues()[i];
        if (lam < 0.0) ps.push_back(std::sqrt(-lam));
    }
    std::sort(ps.begin(), ps.end());
    return ps;
}

cplx free_gaussian_evolution(double x, double t, double center, double sigma) {
    const cplx denom = sigma * sigma + 2.0 * I * t;
    return std::sqrt(sigma * sigma / denom) *
           std::exp(-(x - center) * (x - center) / (2.0 * denom));
}

}  // namespace ut::oracles
