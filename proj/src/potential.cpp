#include "unitransform/potential.hpp"

#include <algorithm>
#include <cmath>

#include "unitransform/errors.hpp"
#include "unitransform/quadrature.hpp"

namespace ut {

namespace {

// Largest |x| at which |u| still exceeds tol, found by doubling then bisection.
// Scans a few offsets per candidate to be robust against incidental zeros.
double find_support(const RealFn& u, DomainKind domain, double tol) {
    auto above = [&](double r) {
        for (double f : {1.0, 0.871, 0.733, 0.551, 0.347, 0.173}) {
            const double x = r * f;
            if (std::abs(u(x)) >= tol) return true;
            if (domain == DomainKind::full_line && std::abs(u(-x)) >= tol) return true;
        }
        return false;
    };
    double hi = 1.0;
    int doublings = 0;
    while (above(hi)) {
        hi *= 2.0;
        if (++doublings > 60) throw DivergentMoment("potential does not decay below tolerance");
    }
    double lo = hi / 2.0;
    if (doublings == 0) return hi;  // already quiet at |x| <= 1
    for (int i = 0; i < 60 && hi - lo > 1e-9 * (1.0 + hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (above(mid) ? lo : hi) = mid;
    }
    return hi;
}

double moment_integral(const RealFn& u, DomainKind domain, double x_support) {
    auto integrand = [&](cplx z) {
        const double x = std::real(z);
        return cplx((1.0 + x * x) * std::abs(u(x)), 0.0);
    };
    quad::QuadOptions opt;
    opt.tol = 1e-8;
    opt.throw_on_failure = false;
    const double lo = (domain == DomainKind::full_line) ? -x_support : 0.0;
    quad::Contour c;
    c.add_line(cplx(lo, 0.0), cplx(x_support, 0.0));
    return std::real(quad::integrate_contour(integrand, c, opt).value);
}

Potential finish(RealFn u, DomainKind domain, double tol) {
    Potential pot;
    pot.eval = std::move(u);
    pot.domain_kind = domain;
    pot.truncation_tol = tol;
    pot.x_support = find_support(pot.eval, domain, tol);
    pot.moment_bound = moment_integral(pot.eval, domain, pot.x_support);
    return pot;
}

}  // namespace

Potential make_zero(DomainKind domain) {
    Potential pot;
    pot.eval = [](double) { return 0.0; };
    pot.domain_kind = domain;
    pot.x_support = 1.0;
    pot.moment_bound = 0.0;
    return pot;
}

Potential make_sech2(const Sech2Params& params, DomainKind domain, double truncation_tol) {
    if (!(params.p > 0.0) || !(params.x0 > 0.0))
        throw ConfigError("sech2 potential requires p > 0 and x0 > 0");
    const double p = params.p, x0 = params.x0;
    return finish([p, x0](double x) { return 2.0 * p * p / std::pow(std::cosh(p * (x - x0)), 2); },
                  domain, truncation_tol);
}

Potential make_gaussian(double amplitude, double center, double width, DomainKind domain,
                        double truncation_tol) {
    if (!(width > 0.0)) throw ConfigError("gaussian potential requires width > 0");
    return finish(
        [=](double x) { return amplitude * std::exp(-std::pow((x - center) / width, 2)); }, domain,
        truncation_tol);
}

Potential make_from_callable(RealFn u, DomainKind domain, double truncation_tol) {
    return finish(std::move(u), domain, truncation_tol);
}

Potential make_tabulated(const RealTable& table, DomainKind domain, double truncation_tol) {
    Potential pot;
    pot.eval = [table](double x) { return table(x); };
    pot.domain_kind = domain;
    pot.truncation_tol = truncation_tol;
    pot.x_support = std::max(std::abs(table.x_min()), std::abs(table.x_max())) + 1.0;
    pot.moment_bound = moment_integral(pot.eval, domain, pot.x_support);
    return pot;
}

Potential load_potential_csv(const std::string& path, DomainKind domain) {
    return make_tabulated(load_real_table_csv(path), domain);
}

double validate_moment(const Potential& potential) {
    // Integrate over doubling windows; diverging partial sums flag failure.
    auto weighted = [&](double a, double b) {
        quad::QuadOptions opt;
        opt.tol = 1e-9;
        opt.throw_on_failure = false;
        return std::real(quad::integrate(
                             [&](double x) {
                                 return cplx((1.0 + x * x) * std::abs(potential(x)), 0.0);
                             },
                             a, b, opt)
                             .value);
    };
    const bool full = potential.domain_kind == DomainKind::full_line;
    double total = weighted(full ? -1.0 : 0.0, 1.0);
    double window = 1.0;
    double prev_tail = 0.0;
    int growing = 0;
    for (int i = 0; i < 40; ++i) {
        double tail = weighted(window, 2.0 * window);
        if (full) tail += weighted(-2.0 * window, -window);
        total += tail;
        if (tail > prev_tail && tail > 1e-14) {
            if (++growing >= 3)
                throw DivergentMoment("moment integral tail grows without bound");
        } else if (tail <= 1e-14 * std::max(1.0, total)) {
            return total;
        } else {
            growing = 0;
        }
        prev_tail = tail;
        window *= 2.0;
    }
    throw DivergentMoment("moment integral did not converge within window budget");
}

}  // namespace ut
