#include "unitransform/io.hpp"

#include <cstdio>
#include <fstream>

#include "unitransform/errors.hpp"

namespace ut::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    return out;
}

}  // namespace

void write_evolution_field_csv(const std::string& path, const FieldSample& field) {
    auto out = open_out(path);
    out << "x,t,re_q,im_q\n";
    for (std::size_t i = 0; i < field.n1(); ++i)
        for (std::size_t j = 0; j < field.n2(); ++j)
            out << format_double(field.axis1[i]) << ',' << format_double(field.axis2[j]) << ','
                << format_double(std::real(field.at(i, j))) << ','
                << format_double(std::imag(field.at(i, j))) << '\n';
}

void write_elliptic_field_csv(const std::string& path, const FieldSample& field) {
    auto out = open_out(path);
    out << "x,y,q\n";
    for (std::size_t i = 0; i < field.n1(); ++i)
        for (std::size_t j = 0; j < field.n2(); ++j)
            out << format_double(field.axis1[i]) << ',' << format_double(field.axis2[j]) << ','
                << format_double(std::real(field.at(i, j))) << '\n';
}

void write_scattering_csv(const std::string& path, const std::vector<ScatteringRow>& rows) {
    auto out = open_out(path);
    out << "re_k,im_k,re_a,im_a,re_b,im_b\n";
    for (const auto& r : rows)
        out << format_double(std::real(r.k)) << ',' << format_double(std::imag(r.k)) << ','
            << format_double(std::real(r.a)) << ',' << format_double(std::imag(r.a)) << ','
            << format_double(std::real(r.b)) << ',' << format_double(std::imag(r.b)) << '\n';
}

void write_complex_trace_csv(const std::string& path, const std::string& abscissa_name,
                             const std::vector<double>& ts, const std::vector<cplx>& vs) {
    auto out = open_out(path);
    out << abscissa_name << ",re,im\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
        out << format_double(ts[i]) << ',' << format_double(std::real(vs[i])) << ','
            << format_double(std::imag(vs[i])) << '\n';
}

void write_real_trace_csv(const std::string& path, const std::string& abscissa_name,
                          const std::vector<double>& xs, const std::vector<double>& v1,
                          const std::string& v1_name, const std::vector<double>& v2,
                          const std::string& v2_name) {
    auto out = open_out(path);
    out << abscissa_name << ',' << v1_name << ',' << v2_name << '\n';
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << format_double(xs[i]) << ',' << format_double(v1[i]) << ','
            << format_double(v2[i]) << '\n';
}

void write_text(const std::string& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
}

}  // namespace ut::io
