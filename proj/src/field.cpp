#include "unitransform/field.hpp"

#include <cmath>

namespace ut {

double max_abs_imag(const FieldSample& f) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(std::imag(v)));
    return m;
}

double field_rel_l2(const FieldSample& a, const FieldSample& b) {
    return rel_l2(a.values, b.values);
}

}  // namespace ut
