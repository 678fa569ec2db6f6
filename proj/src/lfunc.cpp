#include "ecmobius/lfunc.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ecmobius/errors.hpp"

namespace ecmobius {

namespace {

double abscissa_for(i64 limit, double shift) {
    for (double sigma = 1.75;; sigma += 0.25)
        if (divisor_tail_bound(limit, sigma - shift) < 1e-16) return sigma;
}

constexpr std::array<cd, 3> root_number_probes = {cd(1.2, 0.0), cd(1.4, 0.5), cd(0.8, 1.1)};
constexpr double probe_split = 1.1;

}  // namespace

LContext::LContext(CurveSpec curve, CoefficientTable table, LOptions opts)
    : curve_(std::move(curve)), table_(std::move(table)), opts_(opts) {
    if (table_.limit < 16 || table_.a.size() != static_cast<std::size_t>(table_.limit) + 1 ||
        table_.mu.size() != table_.a.size())
        fail(ErrorKind::config, "coefficient table must hold a_n and mu_E(n) for n <= n_max, n_max >= 16");
    scale_ = std::sqrt(conductor()) / (2.0 * pi);
    log_scale_ = std::log(scale_);
    const auto n = static_cast<std::size_t>(table_.limit);
    a_values_.assign(n + 1, 0.0);
    log_n_.assign(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        a_values_[k] = static_cast<double>(table_.a[k]);
        log_n_[k] = std::log(static_cast<double>(k));
        if (!table_.mu[k].is_zero()) {
            mu_support_.push_back(k);
            mu_values_.push_back(table_.mu[k].value());
        }
    }
    mu_abscissa_ = abscissa_for(table_.limit, 0.0);
    a_abscissa_ = abscissa_for(table_.limit, 0.5);
    warnings_ = curve_.warnings;

    const int detected = detect_root_number(*this);
    if (curve_.root_number && *curve_.root_number != detected)
        warnings_.push_back("supplied root number " + std::to_string(*curve_.root_number) +
                            " contradicts the functional equation; using " + std::to_string(detected));
    eta_ = detected;
    curve_.root_number = detected;
}

DirichletValue LContext::l_dirichlet(cd s) const {
    if (s.real() < 1.75) fail(ErrorKind::domain, "l_dirichlet: requires Re s >= 1.75");
    return {dirichlet_l(s), divisor_tail_bound(table_.limit, s.real() - 0.5)};
}

cd LContext::dirichlet_l(cd s) const {
    cd sum = 0.0;
    for (std::size_t k = table_.a.size() - 1; k >= 1; --k)  // smallest terms first
        if (a_values_[k] != 0.0) sum += a_values_[k] * std::exp(-s * log_n_[k]);
    return sum;
}

cd LContext::lambda_with_sign(cd s, int eta, double split) const {
    const cd s2 = 2.0 - s;
    const double sig1 = s.real(), sig2 = s2.real();
    const double log_tol = std::log(opts_.truncation);
    cd sum = 0.0;
    for (std::size_t k = 1; k < a_values_.size(); ++k) {
        const double x1 = static_cast<double>(k) * split / scale_;
        const double x2 = static_cast<double>(k) / (split * scale_);
        const double lr = log_scale_ - log_n_[k];
        if (a_values_[k] != 0.0) {
            const cd t1 = std::exp(s * lr) * upper_incomplete_gamma(s, x1);
            const cd t2 = std::exp(s2 * lr) * upper_incomplete_gamma(s2, x2);
            sum += a_values_[k] * (t1 + double(eta) * t2);
        }
        // |Gamma(s,x)| <= Gamma(Re s, x) <~ 2 x^{Re s - 1} e^{-x} once x > 2|Re s|.
        const double xm = std::min(x1, x2);
        if (xm > 2.0 * std::max({std::abs(sig1), std::abs(sig2), 1.0}) + 2.0) {
            const double lk = 0.5 * log_n_[k] + std::log(2.0 * (1.0 + log_n_[k]));
            const double b1 = lk + sig1 * lr + (sig1 - 1.0) * std::log(x1) - x1 + std::log(2.0 * xm);
            const double b2 = lk + sig2 * lr + (sig2 - 1.0) * std::log(x2) - x2 + std::log(2.0 * xm);
            if (std::max(b1, b2) < log_tol) return sum;
        }
    }
    fail(ErrorKind::numerical, "smoothed sum not converged: coefficient table too short for this conductor");
}

cd LContext::smoothed_l(cd s) const {
    const cd lam = lambda_with_sign(s, eta_, 1.0);
    return lam * std::exp(-s * log_scale_ - log_gamma(s));
}

cd LContext::l_anywhere(cd s) const {
    if (s.real() >= a_abscissa_) return dirichlet_l(s);
    if (s.real() >= 1.0) return smoothed_l(s);
    if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real())) return 0.0;  // trivial zeros
    const cd r = 2.0 - s;
    const cd factor = std::exp((2.0 - 2.0 * s) * log_scale_ + log_gamma(r) - log_gamma(s));
    return double(eta_) * factor * l_anywhere(r);
}

cd LContext::inverse_shifted(cd s) const { return 1.0 / l_anywhere(s + 0.5); }

cd LContext::mu_dirichlet(cd s) const {
    cd sum = 0.0;
    for (std::size_t i = mu_support_.size(); i-- > 0;) sum += mu_values_[i] * std::exp(-s * log_n_[mu_support_[i]]);
    return sum;
}

double LContext::mu_abs_sum(double sigma) const {
    double sum = 0.0;
    for (std::size_t i = mu_support_.size(); i-- > 0;)
        sum += std::abs(mu_values_[i]) * std::exp(-sigma * log_n_[mu_support_[i]]);
    return sum + divisor_tail_bound(table_.limit, sigma);
}

int detect_root_number(const LContext& ctx) {
    int found = 0, passes = 0;
    for (int eta : {1, -1}) {
        bool ok = true;
        for (cd s : root_number_probes) {
            const cd left = ctx.lambda_with_sign(s, eta, probe_split);
            const cd right = ctx.lambda_with_sign(2.0 - s, eta, probe_split);
            if (std::abs(left - double(eta) * right) >= 1e-8 * (1.0 + std::abs(left))) ok = false;
        }
        if (ok) {
            found = eta;
            ++passes;
        }
    }
    if (passes != 1) fail(ErrorKind::numerical, "ambiguous root number (check coefficients and conductor)");
    return found;
}

double lambda_symmetry_defect(const LContext& ctx, const std::vector<cd>& points) {
    double worst = 0.0;
    for (cd s : points) {
        const cd left = ctx.lambda_with_sign(s, ctx.root_number(), probe_split);
        const cd right = ctx.lambda_with_sign(2.0 - s, ctx.root_number(), probe_split);
        worst = std::max(worst, std::abs(left - double(ctx.root_number()) * right) / (1.0 + std::abs(left)));
    }
    return worst;
}

namespace {

std::vector<cd> taylor_once(const ShiftedL& f, cd s0, int count, double radius, int nodes) {
    std::vector<cd> samples(static_cast<std::size_t>(nodes));
    for (int k = 0; k < nodes; ++k) samples[k] = f(s0 + radius * std::polar(1.0, 2.0 * pi * k / nodes));
    std::vector<cd> c(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        cd acc = 0.0;
        for (int k = 0; k < nodes; ++k) acc += samples[k] * std::polar(1.0, -2.0 * pi * double(j) * k / nodes);
        c[j] = acc / (double(nodes) * std::pow(radius, j));
    }
    return c;
}

}  // namespace

std::vector<cd> taylor_at(const ShiftedL& f, cd s0, int count, double radius, int nodes, bool verify) {
    if (count < 1 || radius <= 0.0 || nodes < 2 * count) fail(ErrorKind::domain, "taylor_at: bad parameters");
    std::vector<cd> c = taylor_once(f, s0, count, radius, nodes);
    if (verify) {
        const std::vector<cd> c2 = taylor_once(f, s0, count, radius, 2 * nodes);
        for (int j = 0; j < count; ++j)
            if (std::abs(c[j] - c2[j]) * std::pow(radius, j) > 1e-9)
                fail(ErrorKind::numerical, "taylor_at: trapezoid rule not converged (radius too large?)");
        c = c2;
    }
    return c;
}

namespace {

double phase_increment(const ShiftedL& f, cd a, cd b, cd fa, cd fb, int depth) {
    const double d = std::arg(fb / fa);
    if (std::abs(d) < 0.3 || depth > 40) return d;
    const cd m = 0.5 * (a + b);
    const cd fm = f(m);
    if (std::abs(fm) < 1e-13) fail(ErrorKind::numerical, "contour too close to L-zero");
    return phase_increment(f, a, m, fa, fm, depth + 1) + phase_increment(f, m, b, fm, fb, depth + 1);
}

double winding(const ShiftedL& f, const std::vector<cd>& polygon, int per_edge) {
    double total = 0.0;
    for (std::size_t e = 0; e < polygon.size(); ++e) {
        const cd a = polygon[e], b = polygon[(e + 1) % polygon.size()];
        cd prev = a, fprev = f(a);
        for (int k = 1; k <= per_edge; ++k) {
            const cd next = a + (b - a) * (double(k) / per_edge);
            const cd fnext = f(next);
            if (std::abs(fnext) < 1e-13) fail(ErrorKind::numerical, "contour too close to L-zero");
            total += phase_increment(f, prev, next, fprev, fnext, 0);
            prev = next;
            fprev = fnext;
        }
    }
    return total / (2.0 * pi);
}

int rounded_winding(double w) {
    const double r = std::round(w);
    if (std::abs(w - r) > 0.05) fail(ErrorKind::numerical, "argument-principle count did not settle");
    return static_cast<int>(r);
}

int circle_zero_count(const ShiftedL& f, double center, double radius) {
    std::vector<cd> poly;
    for (int k = 0; k < 64; ++k) poly.push_back(center + radius * std::polar(1.0, 2.0 * pi * k / 64));
    return rounded_winding(winding(f, poly, 4));
}

}  // namespace

int rectangle_zero_count(const ShiftedL& f, double x0, double x1, double y0, double y1) {
    const std::vector<cd> poly = {cd(x0, y0), cd(x1, y0), cd(x1, y1), cd(x0, y1)};
    return rounded_winding(winding(f, poly, 64));
}

std::vector<ZeroRecord> find_real_zeros(const ShiftedL& f, double lo, double hi, double tol_zero) {
    std::vector<ZeroRecord> out;
    if (!(hi > lo)) return out;
    constexpr double step = 1.0 / 512.0;
    auto g = [&](double x) { return f(cd(x, 0.0)).real(); };

    std::vector<double> roots;
    const int cells = std::max(1, static_cast<int>(std::ceil((hi - lo) / step)));
    double xa = lo + 1e-9, ga = g(xa);
    for (int k = 1; k <= cells; ++k) {
        const double xb = (k == cells) ? hi - 1e-9 : lo + k * step;
        const double gb = g(xb);
        if (ga == 0.0) roots.push_back(xa);
        if (ga * gb < 0.0) {
            int changes = 0;
            double prev = ga;
            for (int q = 1; q <= 4; ++q) {
                const double gq = q == 4 ? gb : g(xa + (xb - xa) * q / 4.0);
                if (prev * gq < 0.0) ++changes;
                prev = gq;
            }
            if (changes > 1) fail(ErrorKind::numerical, "zero too close to grid resolution");
            double l = xa, r = xb, gl = ga;
            while (r - l > 1e-12) {
                const double m = 0.5 * (l + r), gm = g(m);
                if (gm == 0.0) {
                    l = r = m;
                    break;
                }
                if ((gl < 0.0) == (gm < 0.0)) {
                    l = m;
                    gl = gm;
                } else {
                    r = m;
                }
            }
            roots.push_back(0.5 * (l + r));
        }
        xa = xb;
        ga = gb;
    }

    // Even-order zeros produce no sign change; test the centre explicitly.
    if (lo < 0.5 && 0.5 < hi) {
        const bool known = std::any_of(roots.begin(), roots.end(), [](double b) { return std::abs(b - 0.5) < 1e-6; });
        if (!known && std::abs(f(cd(0.5, 0.0))) <= tol_zero) roots.push_back(0.5);
    }
    std::sort(roots.begin(), roots.end());

    for (double beta : roots) {
        if (std::abs(beta - 0.5) < 1e-9) beta = 0.5;
        ZeroRecord z;
        z.beta = beta;
        z.taylor = taylor_at(f, cd(beta, 0.0), 6, 0.05);
        z.taylor[0] = f(cd(beta, 0.0));
        int order = 0;
        while (order < 6 && std::abs(z.taylor[order]) <= tol_zero) ++order;
        if (order == 0) order = 1;  // bisection landed within 1e-12 of a simple sign change
        if (order > 2) fail(ErrorKind::numerical, "zero of order > 2 unsupported");
        z.order = order;
        if (circle_zero_count(f, beta, 0.02) != order)
            fail(ErrorKind::numerical, "zero order does not match the argument-principle count");
        out.push_back(std::move(z));
    }
    return out;
}

cd DirichletPolynomial::operator()(cd s) const {
    cd sum = 0.0;
    for (const auto& [n, an] : terms) sum += an * std::exp(-s * std::log(static_cast<double>(n)));
    return sum;
}

}  // namespace ecmobius
