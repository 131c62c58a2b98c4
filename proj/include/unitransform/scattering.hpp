#pragma once

#include <vector>

#include "unitransform/common.hpp"
#include "unitransform/jost.hpp"

namespace ut {

/// Which eigenfunction pair feeds the completeness machinery: the half-line
/// pair (phi, a) or the full-line pair (Phi, A).
enum class SpectralBasis { half_line, full_line };

inline SpectralBasis default_basis(const Potential& potential) {
    return potential.domain_kind == DomainKind::full_line ? SpectralBasis::full_line
                                                          : SpectralBasis::half_line;
}

struct ScatteringOptions {
    double k_zero_cutoff = 1e-3;
    double p_min = 1e-4;
    double a_dot_step_rel = 1e-5;
    int scan_points = 600;
    double root_tol = 1e-10;
};

struct ScatteringData {
    std::vector<double> bound_states;  // p_j with a(i p_j) = 0
    std::vector<cplx> a_dot;           // da/dk at k = i p_j
    std::vector<double> psi0_zeros;    // p with psi(0, ip) = 0 (diagnostic)
    std::vector<double> psix0_zeros;   // p with psi_x(0, ip) = 0 (diagnostic)
};

class ScatteringEvaluator {
  public:
    ScatteringEvaluator(const JostEvaluator& jost, SpectralBasis basis,
                        ScatteringOptions opt = {});
    explicit ScatteringEvaluator(const JostEvaluator& jost, ScatteringOptions opt = {});

    SpectralBasis basis() const { return basis_; }
    const ScatteringOptions& options() const { return opt_; }

    /// Wronskian form 2ik a(k); regular at k = 0. For the half-line basis this
    /// is psi_x(0,k) + ik psi(0,k); for the full-line basis W(Phi, psi).
    cplx wronskian_a(cplx k) const;
    /// Wronskian of the pair evaluated at a chosen abscissa (x-independence
    /// of the result is a correctness check).
    cplx wronskian_a_at(cplx k, double x_eval) const;
    /// 2ik b(k) for real k.
    cplx wronskian_b(double k) const;
    cplx wronskian_b_at(double k, double x_eval) const;

    cplx a(cplx k) const;        // throws NearZeroWavenumber below cutoff
    cplx a_alt(cplx k) const;    // boundary-value form, agreement check
    cplx b(double k) const;

    std::vector<double> find_bound_state_ps() const;
    std::vector<cplx> a_dot_at(std::span<const double> ps) const;
    std::vector<double> psi0_zero_ps() const;
    std::vector<double> psix0_zero_ps() const;
    ScatteringData data() const;

    double p_search_max() const;

  private:
    const JostEvaluator& jost_;
    SpectralBasis basis_;
    ScatteringOptions opt_;
};

/// Convenience wrappers mirroring the operation-level interface.
cplx scattering_a(const JostEvaluator& jost, cplx k);
cplx scattering_b(const JostEvaluator& jost, double k);
std::pair<std::vector<double>, std::vector<cplx>> find_bound_states(const JostEvaluator& jost);

}  // namespace ut
