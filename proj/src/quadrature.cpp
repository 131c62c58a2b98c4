#include "unitransform/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "unitransform/errors.hpp"

namespace ut::quad {

namespace {

// Gauss-Kronrod 7-15 on [-1,1]. Gauss nodes are the odd-indexed Kronrod ones.
constexpr double kx[15] = {
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};
constexpr double kw[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};
constexpr double gw[7] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

// Gauss-Legendre 12 on [-1,1].
constexpr double glx[12] = {
    -0.981560634246719250690549090149, -0.904117256370474856678465866119,
    -0.769902674194304687036893833213, -0.587317954286617447296702418941,
    -0.367831498998180193752691536644, -0.125233408511468915472441369464,
    0.125233408511468915472441369464,  0.367831498998180193752691536644,
    0.587317954286617447296702418941,  0.769902674194304687036893833213,
    0.904117256370474856678465866119,  0.981560634246719250690549090149};
constexpr double glw[12] = {
    0.047175336386511827194615961485, 0.106939325995318430960254718194,
    0.160078328543346226334652529543, 0.203167426723065921749064455810,
    0.233492536538354808760849898925, 0.249147045813402785000562436043,
    0.249147045813402785000562436043, 0.233492536538354808760849898925,
    0.203167426723065921749064455810, 0.160078328543346226334652529543,
    0.106939325995318430960254718194, 0.047175336386511827194615961485};

struct Panel {
    const Segment* seg;
    double s0, s1;
    cplx value;
    double err;
};

void eval_panel(const Integrand& f, Panel& p) {
    const double mid = 0.5 * (p.s0 + p.s1);
    const double half = 0.5 * (p.s1 - p.s0);
    cplx acc_k{}, acc_g{};
    for (int i = 0; i < 15; ++i) {
        const double s = mid + half * kx[i];
        const cplx z = p.seg->point(s);
        const cplx dz = p.seg->derivative(s);
        const cplx fv = f(z) * dz;
        acc_k += kw[i] * fv;
        if (i % 2 == 1) acc_g += gw[i / 2] * fv;
    }
    p.value = half * acc_k;
    p.err = std::abs(half * (acc_k - acc_g));
}

}  // namespace

cplx Segment::point(double s) const {
    if (kind == Kind::line) return a + s * (b - a);
    const double th = theta0 + s * (theta1 - theta0);
    return center + radius * std::exp(I * th);
}

cplx Segment::derivative(double s) const {
    if (kind == Kind::line) return b - a;
    const double th = theta0 + s * (theta1 - theta0);
    return radius * (theta1 - theta0) * I * std::exp(I * th);
}

double Segment::length() const {
    if (kind == Kind::line) return std::abs(b - a);
    return radius * std::abs(theta1 - theta0);
}

void Contour::add_indented_line(cplx a, cplx b, std::span<const Indent> indents) {
    const cplx d = b - a;
    const double len = std::abs(d);
    const cplx dir = d / len;
    std::vector<Indent> sorted(indents.begin(), indents.end());
    std::sort(sorted.begin(), sorted.end(), [&](const Indent& u, const Indent& v) {
        return std::real(std::conj(dir) * (u.pole - a)) < std::real(std::conj(dir) * (v.pole - a));
    });
    cplx cur = a;
    for (const auto& ind : sorted) {
        const double along = std::real(std::conj(dir) * (ind.pole - a));
        if (along - ind.radius < -1e-12 || along + ind.radius > len + 1e-12)
            throw SolverError("contour: indentation does not fit inside segment");
        const cplx entry = ind.pole - ind.radius * dir;
        const cplx exit = ind.pole + ind.radius * dir;
        if (std::abs(entry - cur) > 1e-14 * (1.0 + len)) add_line(cur, entry);
        const double th_in = std::arg(entry - ind.pole);
        // Pick the half-turn whose mid-arc point lies on the requested side.
        const cplx left_dir = I * dir;
        const cplx mid_ccw = std::exp(I * (th_in + PI / 2));
        const bool ccw_is_left = std::real(std::conj(left_dir) * mid_ccw) > 0.0;
        const double th_out =
            (ind.side == IndentSide::left) == ccw_is_left ? th_in + PI : th_in - PI;
        add_arc(ind.pole, ind.radius, th_in, th_out);
        cur = exit;
    }
    if (std::abs(b - cur) > 1e-14 * (1.0 + len)) add_line(cur, b);
}

bool Contour::connected(double tol) const {
    for (std::size_t i = 1; i < segments.size(); ++i)
        if (std::abs(segments[i].start() - segments[i - 1].end()) > tol) return false;
    return true;
}

NodeSet make_nodes(const Contour& contour, double rad_per_panel, const PhaseRate& rate,
                   double min_panel) {
    NodeSet ns;
    for (const auto& seg : contour.segments) {
        const double len = seg.length();
        if (len <= 0.0) continue;
        // Greedy paneling by local oscillation rate.
        double s = 0.0;
        std::vector<std::pair<double, double>> panels;
        while (s < 1.0 - 1e-14) {
            double w = 1.0 - s;
            if (rate) {
                const double r = std::max(rate(seg.point(s)), 1e-12);
                w = std::min(w, std::max(rad_per_panel / (r * len), min_panel / len));
            }
            panels.emplace_back(s, std::min(1.0, s + w));
            s += w;
        }
        for (const auto& [s0, s1] : panels) {
            const double mid = 0.5 * (s0 + s1), half = 0.5 * (s1 - s0);
            for (int i = 0; i < 15; ++i) {
                const double ss = mid + half * kx[i];
                const cplx dz = seg.derivative(ss);
                ns.z.push_back(seg.point(ss));
                ns.w_kronrod.push_back(half * kw[i] * dz);
                ns.w_gauss.push_back(i % 2 == 1 ? half * gw[i / 2] * dz : cplx{});
            }
            ++ns.panels;
        }
    }
    return ns;
}

QuadratureResult integrate_contour(const Integrand& f, const Contour& contour,
                                   const QuadOptions& opt, const PhaseRate& rate) {
    std::vector<Panel> done;
    std::vector<Panel> work;

    for (const auto& seg : contour.segments) {
        const double len = seg.length();
        if (len <= 0.0) continue;
        double s = 0.0;
        while (s < 1.0 - 1e-14) {
            double w = 1.0 - s;
            if (rate) {
                const double r = std::max(rate(seg.point(s)), 1e-12);
                w = std::min(w, std::max(opt.rad_per_panel / (r * len), 1e-12 / len));
            }
            Panel p{&seg, s, std::min(1.0, s + w), {}, 0.0};
            eval_panel(f, p);
            work.push_back(p);
            s = p.s1;
        }
    }

    int panels = int(work.size());
    double err_sum = 0.0;
    for (const auto& p : work) err_sum += p.err;

    while (err_sum > opt.tol && panels < opt.max_panels && !work.empty()) {
        // Split the worst panel (deterministic: first among ties).
        std::size_t worst = 0;
        for (std::size_t i = 1; i < work.size(); ++i)
            if (work[i].err > work[worst].err) worst = i;
        Panel p = work[worst];
        work.erase(work.begin() + long(worst));
        if (p.s1 - p.s0 < 1e-13) {
            done.push_back(p);  // cannot refine further
            continue;
        }
        const double sm = 0.5 * (p.s0 + p.s1);
        Panel l{p.seg, p.s0, sm, {}, 0.0}, r{p.seg, sm, p.s1, {}, 0.0};
        eval_panel(f, l);
        eval_panel(f, r);
        err_sum += l.err + r.err - p.err;
        work.push_back(l);
        work.push_back(r);
        ++panels;
    }

    QuadratureResult res;
    for (const auto& p : done) {
        res.value += p.value;
        res.error_estimate += p.err;
    }
    for (const auto& p : work) {
        res.value += p.value;
        res.error_estimate += p.err;
    }
    res.panels_used = panels;
    if (res.error_estimate > opt.tol && opt.throw_on_failure)
        throw QuadratureFailure("quadrature: tolerance not met", res.value, res.error_estimate);
    return res;
}

QuadratureResult integrate(const std::function<cplx(double)>& f, double a, double b,
                           const QuadOptions& opt, const PhaseRate& rate) {
    Contour c;
    c.add_line(cplx(a, 0.0), cplx(b, 0.0));
    return integrate_contour([&](cplx z) { return f(std::real(z)); }, c, opt, rate);
}

RealNodes gauss_panels(double a, double b, double rad_per_panel,
                       const std::function<double(double)>& rate) {
    RealNodes rn;
    if (b <= a) return rn;
    double x = a;
    while (x < b - 1e-14 * (std::abs(b) + 1.0)) {
        double w = b - x;
        if (rate) {
            const double r = std::max(rate(x), 1e-12);
            w = std::min(w, rad_per_panel / r);
        }
        const double x1 = std::min(b, x + w);
        const double mid = 0.5 * (x + x1), half = 0.5 * (x1 - x);
        for (int i = 0; i < 12; ++i) {
            rn.x.push_back(mid + half * glx[i]);
            rn.w.push_back(half * glw[i]);
        }
        x = x1;
    }
    return rn;
}

}  // namespace ut::quad
