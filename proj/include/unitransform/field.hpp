#pragma once

#include <string>
#include <vector>

#include "unitransform/common.hpp"

namespace ut {

struct FieldDiagnostics {
    double pde_residual = 0.0;
    double ic_error = 0.0;
    double bc_error = 0.0;
    std::vector<std::string> notes;
};

/// Solution values on a rectangular grid; axis2 is t for evolution problems
/// and y for elliptic ones. Storage is axis1-major: values[ix * n2 + i2].
struct FieldSample {
    std::vector<double> axis1;
    std::vector<double> axis2;
    std::vector<cplx> values;
    FieldDiagnostics diagnostics;

    cplx& at(std::size_t i1, std::size_t i2) { return values[i1 * axis2.size() + i2]; }
    const cplx& at(std::size_t i1, std::size_t i2) const {
        return values[i1 * axis2.size() + i2];
    }
    std::size_t n1() const { return axis1.size(); }
    std::size_t n2() const { return axis2.size(); }
};

double max_abs_imag(const FieldSample& f);

/// Relative L2 distance between two fields on identical grids.
double field_rel_l2(const FieldSample& a, const FieldSample& b);

}  // namespace ut
