#pragma once

#include <memory>
#include <span>

#include "unitransform/common.hpp"
#include "unitransform/field.hpp"
#include "unitransform/jost.hpp"
#include "unitransform/potential.hpp"

namespace ut {

struct LaplaceData {
    RealFn f;  // datum of q_y + gamma1 q at y = 0
    RealFn g;  // datum of q_x + beta q_y + gamma2 q at x = 0
    double f_support = 10.0;
    double g_support = 10.0;
    double beta = 0.0;
    double gamma1 = -1.0;
    double gamma2 = 0.0;
};

struct LaplaceOptions {
    double ode_tol = 1e-10;
    double rad_per_panel = 6.0;
    double k_max = 0.0;  // 0: automatic
    double k_max_floor = 8.0;
    double k_max_cap = 80.0;
    double k_tail_ratio = 1e-8;
    double psi0_cutoff = 1e-8;
    double pole_guard = 1e-6;
    int threads = 0;
};

struct MuCheckReport {
    double ode_residual = 0.0;   // defect of the x-equation satisfied by mu
    double jump_residual = 0.0;  // defect of the imaginary-axis jump relation
    double decay_bound = 0.0;    // max |k mu| at the largest sampled |k|
};

/// Quarter-plane solver for q_xx + q_yy + u(x) q = 0 under Poincare boundary
/// conditions, built on the half-line pair (phi, psi, a) of the potential.
/// The potential must have no zeros of a in the closed upper half-plane;
/// construction throws BoundStatePresent otherwise.
class LaplaceSolver {
  public:
    LaplaceSolver(Potential potential, LaplaceData data, LaplaceOptions opt = {});
    ~LaplaceSolver();

    const JostEvaluator& jost() const;

    // Spectral building blocks, all computable from the data alone.
    cplx H(cplx k) const;
    cplx F(cplx k) const;
    cplx N(cplx k) const;
    cplx J(cplx k) const;
    cplx D(cplx k) const;
    cplx d_small(cplx k) const;
    cplx h_small(cplx k) const;

    /// Full solve for beta = 0, gamma1 < 0: four contour integrals built from
    /// N and F. Returns a real field; the imaginary residue is reported in
    /// the diagnostics.
    FieldSample solve_algebraic(std::span<const double> xs, std::span<const double> ys) const;

    /// Evaluates the integral representation from given spectral data
    /// rho(k) (positive real axis) and g0(k) (transform of q(0, y)).
    FieldSample representation_evaluate(const std::function<cplx(cplx)>& rho,
                                        const std::function<cplx(cplx)>& g0k,
                                        std::span<const double> xs,
                                        std::span<const double> ys) const;

    /// rho(k) assembled from boundary traces (the representation-level
    /// definition); used for oracle round-trip checks.
    cplx rho_from_trace(const RealFn& q_y0, double x_support,
                        const std::function<cplx(cplx)>& g0k, cplx k) const;

    /// Boundary transform recovered spectrally from the y = 0 trace through
    /// the psi-based global relation: g0(k) = (beta psi(0,k) q00 + H -
    /// (k+gamma1) int q(x,0) psi dx) / D. Exponential damping of psi on the
    /// imaginary axis makes this insensitive to the trace's algebraic tail.
    /// Values in the lower half-plane come from the real-trace conjugation.
    cplx g0k_from_y0_trace(const RealFn& q_y0, double x_support, cplx k,
                           double q00 = 0.0) const;

    /// Two-sided exponential transform of the x = 0 trace,
    /// int_0^y e^{-k(y-eta)} q(0,eta) deta + int_y^inf e^{k(y-eta)} q(0,eta)
    /// deta; one of the sectionally analytic building blocks.
    cplx boundary_two_sided_transform(const RealFn& q_x0, double y_support, double y,
                                      cplx k) const;

    /// Max defect of the two global relations over the supplied k grids,
    /// using independently computed boundary traces. The phi relation holds
    /// for Re k <= 0 and the psi one for Im k >= 0; sampling them in the
    /// open third and second quadrants keeps both integrals exponentially
    /// damped, so truncated algebraic trace tails do not dominate.
    std::pair<double, double> global_relation_residual(
        const RealFn& q_y0, const RealFn& qy_y0, const RealFn& q_x0, const RealFn& qx_x0,
        double x_support, double y_support, std::span<const cplx> k_phi,
        std::span<const cplx> k_psi) const;

    /// Max defect of the jump relation for a candidate boundary transform;
    /// certifies (does not solve) the Riemann-Hilbert problem. Works for
    /// beta != 0.
    double rh_jump_residual(const std::function<cplx(cplx)>& candidate_g0k, double q00,
                            std::span<const double> s_grid) const;

    /// Builds the sectionally analytic mu functions from a reference field
    /// and checks the equation defect, the imaginary-axis jump, and decay.
    MuCheckReport mu_functions_check(const std::function<double(double, double)>& q_field,
                                     double x_support, double y_support,
                                     std::span<const cplx> k_samples) const;

    /// Magnitudes of the two discarded contour integrals of the algebraic
    /// reduction, evaluated with a supplied boundary transform over the
    /// truncated quadrant boundaries.
    std::pair<double, double> discarded_contour_magnitudes(
        const std::function<cplx(cplx)>& g0k, double x, double y, double K) const;

    const LaplaceOptions& options() const;
    const LaplaceData& data() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Central-difference residual of q_xx + q_yy + u q on the sample grid.
double laplace_pde_residual(const FieldSample& field, const Potential& potential);

}  // namespace ut
