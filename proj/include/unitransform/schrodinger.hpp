#pragma once

#include <memory>
#include <optional>
#include <span>

#include "unitransform/common.hpp"
#include "unitransform/field.hpp"
#include "unitransform/jost.hpp"
#include "unitransform/potential.hpp"
#include "unitransform/scattering.hpp"
#include "unitransform/transforms.hpp"

namespace ut {

enum class BcKind { dirichlet, neumann };
enum class Representation { direct, deformed, longtime, sine };

enum class DensityVariant {
    dirichlet_halfline,
    neumann_halfline,
    dirichlet_fullline,
    neumann_fullline,
    sine_analogue
};

struct SchrodingerData {
    ComplexFn q0;
    double q0_support = 10.0;
    ComplexFn g0;  // Dirichlet datum, required iff bc == dirichlet
    ComplexFn g1;  // Neumann datum, required iff bc == neumann
    BcKind bc = BcKind::dirichlet;
};

struct SchrodingerOptions {
    double ode_tol = 1e-10;
    double rad_per_panel = 6.0;
    double k_max = 0.0;            // 0: automatic truncation
    double k_max_floor = 10.0;
    double k_max_cap = 90.0;
    double data_tail_tol = 1e-6;   // truncation target for the data transforms
    double bdry_tail_tol = 1e-4;   // truncation target for the boundary term
    double inner_rad_per_panel = 14.0;  // data- and time-transform panels
    double psi0_cutoff = 1e-8;
    double compat_tol = 1e-6;
    double decay_horizon = 0.0;    // 0: detect from the boundary datum
    bool tail_correction = true;   // analytic large-k completion of the
                                   // boundary term
    int threads = 0;               // 0: hardware concurrency
};

/// Half-line Schrodinger solver i q_t + q_xx + u q = 0 built on the
/// eigenfunction transform pair of the potential. The spectral basis follows
/// the potential's domain kind: half-line (phi, a) or full-line (Phi, A).
class SchrodingerSolver {
  public:
    SchrodingerSolver(Potential potential, SchrodingerData data, SchrodingerOptions opt = {});
    ~SchrodingerSolver();

    const JostEvaluator& jost() const;
    const ScatteringData& scattering() const;
    SpectralBasis basis() const;
    DensityVariant variant() const;

    /// Spectral density at one (k, t); throws PsiZeroAtOrigin /
    /// PsiXZeroAtOrigin when the boundary denominator nearly vanishes.
    cplx spectral_density(cplx k, double t) const;

    /// Real-axis representation plus discrete terms plus boundary-operator
    /// bound-state corrections.
    FieldSample reconstruct_field(std::span<const double> xs, std::span<const double> ts) const;
    /// Contour form: real-axis initial-data integral, residue sum, and the
    /// first-quadrant boundary integral indented around imaginary-axis poles.
    /// Dirichlet only.
    FieldSample reconstruct_deformed(std::span<const double> xs, std::span<const double> ts) const;
    /// Same contour with the infinite-horizon boundary transform; valid for
    /// decaying boundary data.
    FieldSample reconstruct_longtime(std::span<const double> xs, std::span<const double> ts) const;
    /// Dirichlet solve through the modified (sine-type) kernel: the density
    /// follows from the kernel transform alone, no global-relation
    /// elimination.
    FieldSample solve_sine_analogue(std::span<const double> xs, std::span<const double> ts) const;

    FieldSample solve(Representation rep, std::span<const double> xs,
                      std::span<const double> ts) const;

    const SchrodingerOptions& options() const;
    const SchrodingerData& data() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Constant-coefficient reference solution (u = 0) evaluated from the
/// Fourier-transform representation over the real axis plus the
/// first-quadrant contour. Shares truncation policy with the solver so the
/// two can be compared at matched resolution.
FieldSample classical_constant_coefficient(const SchrodingerData& data,
                                           std::span<const double> xs,
                                           std::span<const double> ts,
                                           const SchrodingerOptions& opt = {});

/// Max over k_grid of the global-relation defect assembled from independent
/// field and trace data at time t.
double global_relation_residual(const JostEvaluator& jost, const ComplexFn& q_at_t,
                                double q_support, const ComplexFn& q0, double q0_support,
                                const ComplexFn& g0_trace, const ComplexFn& g1_trace,
                                std::span<const double> k_grid, double t);

/// Central-difference residual of i q_t + q_xx + u q on the sample grid.
double schrodinger_pde_residual(const FieldSample& field, const Potential& potential);

}  // namespace ut
