#pragma once

#include <string>
#include <vector>

#include "unitransform/common.hpp"
#include "unitransform/field.hpp"

namespace ut::io {

/// Round-trip-safe decimal formatting of a double.
std::string format_double(double v);

/// Header row x,t,re_q,im_q followed by axis1-major rows.
void write_evolution_field_csv(const std::string& path, const FieldSample& field);

/// Header row x,y,q; imaginary parts are dropped (they are a diagnostic).
void write_elliptic_field_csv(const std::string& path, const FieldSample& field);

struct ScatteringRow {
    cplx k;
    cplx a;
    cplx b;
};
void write_scattering_csv(const std::string& path, const std::vector<ScatteringRow>& rows);

void write_complex_trace_csv(const std::string& path, const std::string& abscissa_name,
                             const std::vector<double>& ts, const std::vector<cplx>& vs);

void write_real_trace_csv(const std::string& path, const std::string& abscissa_name,
                          const std::vector<double>& xs, const std::vector<double>& v1,
                          const std::string& v1_name, const std::vector<double>& v2,
                          const std::string& v2_name);

void write_text(const std::string& path, const std::string& text);

}  // namespace ut::io
