#pragma once

#include <span>
#include <vector>

#include "unitransform/common.hpp"
#include "unitransform/jost.hpp"
#include "unitransform/scattering.hpp"

namespace ut {

struct CompletenessOptions {
    double k_max = 0.0;          // 0: choose from the transform decay
    double k_tail_ratio = 1e-8;  // truncation criterion on |f_check(k)|
    double rad_per_panel = 6.0;
    double ode_tol = 1e-10;
};

/// Expands f through the eigenfunction transform pair and re-sums it on
/// x_grid; the continuum integral plus one discrete term per zero of a (or A)
/// resolves the identity. Used as a delta-kernel self-test.
std::vector<cplx> completeness_reconstruct(const ComplexFn& f, double f_support,
                                           const JostEvaluator& jost, SpectralBasis basis,
                                           std::span<const double> x_grid,
                                           const CompletenessOptions& opt = {});

/// Same with the Dirichlet kernel phi(x',k) - psi(x',k)/psi(0,k). Detected
/// zeros of psi(0, i p) contribute Dirichlet bound-state projectors, which the
/// continuum integral cannot represent. Throws PoleOnContour if psi(0,k)
/// nearly vanishes on the integration ray.
std::vector<cplx> completeness_sine_analogue(const ComplexFn& f, double f_support,
                                             const JostEvaluator& jost,
                                             std::span<const double> x_grid,
                                             const CompletenessOptions& opt = {});

/// L2(0,inf) norm squared of psi(., ip), used to normalize bound-state
/// projectors.
double psi_norm_squared(const JostEvaluator& jost, double p);

}  // namespace ut
