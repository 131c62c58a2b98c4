#pragma once

#include "unitransform/common.hpp"
#include "unitransform/jost.hpp"
#include "unitransform/scattering.hpp"

namespace ut {

struct TransformOptions {
    double rad_per_panel = 6.0;
    double data_rate = 2.0;  // extra oscillation allowance for the data factor
    double overflow_guard = 1e10;
};

/// Transforms of the initial condition against the eigenfunction pair:
///   hat  = int_0^inf kernel(x,k) q0(x) dx   (kernel = phi or Phi by basis)
///   tilde= int_0^inf psi(x,k)  q0(x) dx
struct InitialTransforms {
    cplx hat{};
    cplx tilde{};
};

InitialTransforms initial_transforms(const ComplexFn& q0, double q0_support,
                                     const JostEvaluator& jost, SpectralBasis basis, cplx k,
                                     const TransformOptions& opt = {});

/// t-transform int_0^t e^{i k^2 tau} g(tau) dtau with oscillation-aware
/// paneling. Throws OverflowRisk when e^{ik^2 tau} grows beyond the guard.
cplx time_transform(const ComplexFn& g, cplx k, double t, const TransformOptions& opt = {});

/// Infinite-horizon version, truncated at the decay horizon of g.
cplx time_transform_inf(const ComplexFn& g, cplx k, double decay_horizon,
                        const TransformOptions& opt = {});

}  // namespace ut
