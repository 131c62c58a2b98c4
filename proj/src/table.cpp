#include "unitransform/table.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "unitransform/errors.hpp"

namespace ut {

template <typename T>
Table1D<T>::Table1D(std::vector<double> xs, std::vector<T> vs)
    : xs_(std::move(xs)), vs_(std::move(vs)) {
    if (xs_.size() != vs_.size() || xs_.size() < 2)
        throw ConfigError("table: need at least two samples with matching sizes");
    for (std::size_t i = 1; i < xs_.size(); ++i)
        if (!(xs_[i] > xs_[i - 1])) throw ConfigError("table: abscissae must increase strictly");
}

template <typename T>
T Table1D<T>::operator()(double x) const {
    if (empty() || x < xs_.front() || x > xs_.back()) return T{};
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = std::size_t(std::max<long>(0, (it - xs_.begin()) - 1));
    // 4-point stencil [i-1, i, i+1, i+2] clamped to the table.
    const std::size_t n = xs_.size();
    std::size_t s = (i == 0) ? 0 : i - 1;
    if (s + 4 > n) s = n - 4 < n ? n - 4 : 0;
    if (n < 4) s = 0;
    const std::size_t m = std::min<std::size_t>(4, n);
    T acc{};
    for (std::size_t a = 0; a < m; ++a) {
        double w = 1.0;
        for (std::size_t b = 0; b < m; ++b) {
            if (a == b) continue;
            w *= (x - xs_[s + b]) / (xs_[s + a] - xs_[s + b]);
        }
        acc += w * vs_[s + a];
    }
    return acc;
}

template <typename T>
T Table1D<T>::integrate_against(const std::function<T(double)>& weight) const {
    // GL4 per native interval: exact for the cubic interpolant.
    static const double gx[4] = {-0.861136311594052575224, -0.339981043584856264803,
                                 0.339981043584856264803, 0.861136311594052575224};
    static const double gwt[4] = {0.347854845137453857373, 0.652145154862546142627,
                                  0.652145154862546142627, 0.347854845137453857373};
    T acc{};
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
        const double mid = 0.5 * (xs_[i] + xs_[i + 1]);
        const double half = 0.5 * (xs_[i + 1] - xs_[i]);
        for (int j = 0; j < 4; ++j) {
            const double x = mid + half * gx[j];
            acc += half * gwt[j] * (*this)(x)*weight(x);
        }
    }
    return acc;
}

template class Table1D<double>;
template class Table1D<cplx>;

namespace {

std::vector<std::vector<double>> load_columns(const std::string& path, std::size_t min_cols) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open table file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        for (auto& c : line)
            if (c == ',' || c == ';' || c == '\t') c = ' ';
        std::istringstream ss(line);
        std::vector<double> row;
        double v;
        while (ss >> v) row.push_back(v);
        if (row.size() < min_cols) {
            if (first && !line.empty()) {
                first = false;  // header row
                continue;
            }
            if (line.find_first_not_of(" \r\n") == std::string::npos) continue;
            throw ConfigError("malformed table row in " + path + ": " + line);
        }
        first = false;
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) throw ConfigError("table file too short: " + path);
    return rows;
}

}  // namespace

RealTable load_real_table_csv(const std::string& path) {
    auto rows = load_columns(path, 2);
    std::vector<double> xs, vs;
    for (const auto& r : rows) {
        xs.push_back(r[0]);
        vs.push_back(r[1]);
    }
    return RealTable(std::move(xs), std::move(vs));
}

ComplexTable load_complex_table_csv(const std::string& path) {
    auto rows = load_columns(path, 2);
    std::vector<double> xs;
    std::vector<cplx> vs;
    for (const auto& r : rows) {
        xs.push_back(r[0]);
        vs.push_back(cplx(r[1], r.size() > 2 ? r[2] : 0.0));
    }
    return ComplexTable(std::move(xs), std::move(vs));
}

}  // namespace ut
