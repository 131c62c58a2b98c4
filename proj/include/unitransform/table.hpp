#pragma once

#include <string>
#include <vector>

#include "unitransform/common.hpp"

namespace ut {

/// Sampled function on a strictly increasing grid, interpolated by local
/// 4-point cubic Lagrange polynomials; zero outside the table.
template <typename T>
class Table1D {
  public:
    Table1D() = default;
    Table1D(std::vector<double> xs, std::vector<T> vs);

    T operator()(double x) const;
    double x_min() const { return xs_.empty() ? 0.0 : xs_.front(); }
    double x_max() const { return xs_.empty() ? 0.0 : xs_.back(); }
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<T>& values() const { return vs_; }
    bool empty() const { return xs_.empty(); }

    /// Integral of interpolant * weight over the table range, evaluated with
    /// Gauss-Legendre nodes on each native interval.
    T integrate_against(const std::function<T(double)>& weight) const;

  private:
    std::vector<double> xs_;
    std::vector<T> vs_;
};

using RealTable = Table1D<double>;
using ComplexTable = Table1D<cplx>;

/// Two-column (or three-column, for complex data) CSV reader. Accepts an
/// optional header row; separator is comma or whitespace.
RealTable load_real_table_csv(const std::string& path);
ComplexTable load_complex_table_csv(const std::string& path);

}  // namespace ut
