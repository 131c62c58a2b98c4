#pragma once

#include <span>
#include <vector>

#include "unitransform/common.hpp"
#include "unitransform/ode.hpp"
#include "unitransform/potential.hpp"

namespace ut {

struct JostPair {
    cplx value{};
    cplx deriv{};
};

/// Solutions of chi_xx + (u + k^2) chi = 0 with scattering normalizations:
///   psi(x,k) ~ e^{ikx} as x -> +inf           (Im k >= 0)
///   phi(0,k) = 1, phi_x(0,k) = -ik            (entire in k)
///   Phi(x,k) ~ e^{-ikx} as x -> -inf          (full-line potentials)
///
/// Integration works on the factored variables m = psi e^{-ikx},
/// n = phi e^{ikx}, P = Phi e^{ikx}, which stay O(1) where the solutions
/// themselves grow. Factored values are exposed for Wronskian assembly
/// without exponential cancellation.
class JostEvaluator {
  public:
    explicit JostEvaluator(Potential potential, double ode_rel_tol = 1e-10);

    const Potential& potential() const { return potential_; }
    double ode_tol() const { return opt_.rel_tol; }

    /// Factored psi at ascending sample points: returns (m, m_x).
    std::vector<JostPair> psi_factored(cplx k, std::span<const double> xs) const;
    /// Factored phi at ascending sample points in [0, inf): returns (n, n_x).
    std::vector<JostPair> phi_factored(cplx k, std::span<const double> xs) const;
    /// Factored Phi at ascending sample points: returns (P, P_x).
    std::vector<JostPair> Phi_factored(cplx k, std::span<const double> xs) const;

    std::vector<JostPair> psi(cplx k, std::span<const double> xs) const;
    std::vector<JostPair> phi(cplx k, std::span<const double> xs) const;
    std::vector<JostPair> Phi(cplx k, std::span<const double> xs) const;

    JostPair psi_at(cplx k, double x) const;
    JostPair phi_at(cplx k, double x) const;
    JostPair Phi_at(cplx k, double x) const;

    static JostPair unfactor_psi(const JostPair& m, cplx k, double x);
    static JostPair unfactor_phi(const JostPair& n, cplx k, double x);

  private:
    Potential potential_;
    ode::Options opt_;
};

}  // namespace ut
