#include "ecmobius/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "ecmobius/errors.hpp"

namespace ecmobius {

namespace {

constexpr std::array<double, 8> xgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                       0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                       0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                       0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                       0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                       0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                       0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1,3,5,7).
constexpr std::array<double, 4> wg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi;
    cd value;
    double error;
    double l1;
};

Panel gk15(const std::function<cd(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    const cd fc = f(c);
    cd kron = wgk[7] * fc;
    cd gauss = wg[3] * fc;
    double l1 = wgk[7] * std::abs(fc);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const cd fl = f(c - dx), fr = f(c + dx);
        const cd pair = fl + fr;
        kron += wgk[j] * pair;
        l1 += wgk[j] * (std::abs(fl) + std::abs(fr));
        if (j % 2 == 1) gauss += wg[j / 2] * pair;
    }
    return {lo, hi, kron * h, std::abs((kron - gauss) * h), l1 * std::abs(h)};
}

}  // namespace

QuadResult integrate(const std::function<cd(double)>& f, double lo, double hi, const QuadOptions& opt) {
    QuadResult res;
    if (lo == hi) return res;
    std::vector<Panel> panels;
    const int n0 = std::max(1, opt.initial_panels);
    for (int i = 0; i < n0; ++i) {
        const double a = lo + (hi - lo) * i / n0, b = (i + 1 == n0) ? hi : lo + (hi - lo) * (i + 1) / n0;
        panels.push_back(gk15(f, a, b));
    }
    res.evaluations = 15 * n0;
    for (;;) {
        cd total = 0.0;
        double err = 0.0, l1 = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].error;
            l1 += panels[i].l1;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        if (err <= std::max({opt.abs_tol, opt.rel_tol * std::abs(total), opt.l1_rel_tol * l1}) || !std::isfinite(err)) {
            if (!std::isfinite(err) || !std::isfinite(total.real()) || !std::isfinite(total.imag()))
                fail(ErrorKind::numerical, "quadrature: non-finite integrand");
            res.value = total;
            res.error = err;
            res.panels = static_cast<int>(panels.size());
            res.l1 = l1;
            return res;
        }
        if (static_cast<int>(panels.size()) >= opt.max_panels)
            fail(ErrorKind::numerical, "quadrature: panel budget exhausted (error " + std::to_string(err) + ")");
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.lo + p.hi);
        panels[worst] = gk15(f, p.lo, mid);
        panels.push_back(gk15(f, mid, p.hi));
        res.evaluations += 30;
    }
}

QuadResult integrate_segment(const std::function<cd(cd)>& f, cd a, cd b, const QuadOptions& opt) {
    const cd d = b - a;
    return integrate([&](double t) { return f(a + t * d) * d; }, 0.0, 1.0, opt);
}

cd circle_mean_integral(const std::function<cd(cd)>& f, cd center, double radius, int nodes) {
    // (1/2 pi i) \oint f ds with s = c + r e^{i theta}, ds = i r e^{i theta} dtheta.
    cd sum = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const double theta = 2.0 * pi * k / nodes;
        const cd e = std::polar(1.0, theta);
        sum += f(center + radius * e) * (radius * e);
    }
    return sum / double(nodes);
}

}  // namespace ecmobius
