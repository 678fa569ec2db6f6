#include "ecmobius/explicit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "ecmobius/errors.hpp"

namespace ecmobius {

namespace {

constexpr cd I{0.0, 1.0};
constexpr int tail_terms = 12;

// Neumaier compensated sum.
struct Accumulator {
    cd sum = 0.0, comp = 0.0;
    void add(cd x) {
        auto part = [](double& s, double& c, double v) {
            const double t = s + v;
            if (std::abs(s) >= std::abs(v))
                c += (s - t) + v;
            else
                c += (v - t) + s;
            s = t;
        };
        double sr = sum.real(), si = sum.imag(), cr = comp.real(), ci = comp.imag();
        part(sr, cr, x.real());
        part(si, ci, x.imag());
        sum = {sr, si};
        comp = {cr, ci};
    }
    cd value() const { return sum + comp; }
};

using Series = std::vector<cd>;

Series series_mul(const Series& a, const Series& b, std::size_t n) {
    Series out(n, 0.0);
    for (std::size_t i = 0; i < n && i < a.size(); ++i)
        for (std::size_t j = 0; i + j < n && j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Series series_inv(const Series& a, std::size_t n) {
    if (a.empty() || a[0] == cd(0.0)) fail(ErrorKind::numerical, "series inverse of a zero leading term");
    Series out(n, 0.0);
    out[0] = 1.0 / a[0];
    for (std::size_t k = 1; k < n; ++k) {
        cd acc = 0.0;
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) acc += a[j] * out[k - j];
        out[k] = -acc / a[0];
    }
    return out;
}

// e^{(beta+u) z} = e^{beta z} sum z^j u^j / j!
Series exp_series(double beta, cd z, std::size_t n) {
    Series out(n);
    cd term = std::exp(beta * z);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = term;
        term *= z / double(j + 1);
    }
    return out;
}

// 1/L(beta+u+1/2) = u^{-order} * returned series.
Series inverse_l_series(const ZeroRecord& zr, std::size_t n) {
    if (zr.order < 1 || zr.order > 2) fail(ErrorKind::numerical, "zero of order > 2 unsupported");
    const auto r = static_cast<std::size_t>(zr.order);
    if (zr.taylor.size() < r + n) fail(ErrorKind::numerical, "zero record has too few Taylor coefficients");
    return series_inv(Series(zr.taylor.begin() + static_cast<long>(r), zr.taylor.end()), n);
}

// Taylor series of tan(pi (beta + u)) for beta away from half-integers.
Series tan_series(double beta) {
    const double t = std::tan(pi * beta), q = 1.0 + t * t;
    return {t, pi * q, pi * pi * t * q, pi * pi * pi * q * (1.0 + 3.0 * t * t) / 3.0};
}

// u * tan(pi (1/2 + u)) = -u cot(pi u).
const Series central_tan_series = {-1.0 / pi, 0.0, pi / 3.0, 0.0, pi * pi * pi / 45.0};

double log_factorial(int k) { return std::lgamma(k + 1.0); }

// Coefficients of J1 and of the regular part of Y1 in powers w^{2k+1}.
double j1_coeff(int k) {
    const double mag = std::exp(-(2 * k + 1) * std::log(2.0) - log_factorial(k) - log_factorial(k + 1));
    return (k % 2 == 0) ? mag : -mag;
}

double y1_tail_coeff(int k) { return -(digamma_int(k + 1) + digamma_int(k + 2)) * j1_coeff(k) / pi; }

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
        return std::hash<std::uint64_t>()(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
    }
};

}  // namespace

struct Evaluator::Cache {
    std::shared_mutex mutex;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, cd, KeyHash> g;
    std::unordered_map<std::uint64_t, cd> tail;
};

cd r_term(const std::vector<ZeroRecord>& zeros, cd z) {
    cd sum = 0.0;
    for (const auto& zr : zeros) {
        const auto r = static_cast<std::size_t>(zr.order);
        const Series inv = inverse_l_series(zr, r);
        const Series prod = series_mul(exp_series(zr.beta, z, r), inv, r);
        sum += prod[r - 1];
    }
    return sum;
}

cd r_star_term(const std::vector<ZeroRecord>& zeros, cd central_value, cd z) {
    bool central = false;
    cd sum = 0.0;
    for (const auto& zr : zeros) {
        const auto r = static_cast<std::size_t>(zr.order);
        if (zr.beta == 0.5) {
            central = true;
            const Series inv = inverse_l_series(zr, r + 1);
            const Series prod = series_mul(series_mul(exp_series(0.5, z, r + 1), inv, r + 1), central_tan_series, r + 1);
            sum += prod[r];
        } else {
            const Series inv = inverse_l_series(zr, r);
            const Series prod = series_mul(series_mul(exp_series(zr.beta, z, r), inv, r), tan_series(zr.beta), r);
            sum += prod[r - 1];
        }
    }
    if (!central) {
        if (central_value == cd(0.0)) fail(ErrorKind::numerical, "L(1) vanishes but no central zero is listed");
        sum += -std::exp(0.5 * z) / (pi * central_value);
    }
    return sum;
}

double mellin_j1_check(double X, int K) {
    if (!(X > 0.0) || K < 1 || K > 60) fail(ErrorKind::domain, "mellin_j1_check: need X > 0 and 1 <= K <= 60");
    Accumulator acc;
    for (int k = 0; k < K; ++k) {
        const double mag = std::exp((-0.5 - k) * std::log(X) - log_factorial(k) - log_factorial(k + 1));
        acc.add(k % 2 == 0 ? mag : -mag);
    }
    return std::abs(acc.value() - bessel_j1(2.0 / std::sqrt(X)));
}

cd mellin_y1_sum(double X, int K) {
    if (!(X > 0.0) || K < 1 || K > 60) fail(ErrorKind::domain, "mellin_y1_check: need X > 0 and 1 <= K <= 60");
    Accumulator acc;
    for (int k = 0; k < K; ++k) {
        const double mag = std::exp((-0.5 - k) * std::log(X) - log_factorial(k) - log_factorial(k + 1)) / pi;
        const double term = mag * (std::log(X) + digamma_int(k + 1) + digamma_int(k + 2));
        acc.add(k % 2 == 0 ? term : -term);
    }
    return acc.value();
}

double mellin_y1_check(double X, int K) {
    const cd w = 2.0 / std::sqrt(X);
    return std::abs(mellin_y1_sum(X, K) - (-bessel_y1(w) - 2.0 / (pi * w)));
}

Evaluator::Evaluator(const LContext& ctx, ContourSpec contour)
    : ctx_(ctx), contour_(contour), cache_(std::make_unique<Cache>()) {
    if (!(contour_.detour_height > 0.0) || !(contour_.left_tail_length > 0.25) || !(contour_.right_tail_height > 0.0) ||
        !(contour_.panel_tolerance > 0.0) || !(contour_.corner_offset > 0.0) || !(contour_.exclusion_radius > 0.0))
        fail(ErrorKind::config, "contour parameters must be positive (left tail > 1/4)");
    if (contour_.detour_height >= 2.0) fail(ErrorKind::config, "detour height must be below 2");

    c_ = ctx_.mu_dirichlet_abscissa();
    m_c_ = ctx_.mu_abs_sum(c_);
    const auto& table = ctx_.table();
    for (std::size_t n = 1; n < table.mu.size(); ++n) {
        log_n_.push_back(std::log(static_cast<double>(n)));
        if (!table.mu[n].is_zero()) {
            support_.push_back(n);
            mu_.push_back(table.mu[n].value());
        }
    }
    log_n_.insert(log_n_.begin(), 0.0);  // log_n_[n] = log n

    // Real zeros on the whole segment under the detour; those in (0,1) enter R.
    const ShiftedL f = ctx_.shifted();
    const double h = contour_.detour_height;
    const auto real = find_real_zeros(f, -0.25, 1.5, ctx_.options().tol_zero);
    int real_orders = 0;
    for (const auto& zr : real) {
        real_orders += zr.order;
        if (zr.beta > 0.0 && zr.beta < 1.0) zeros_.push_back(zr);
    }
    const int inside = rectangle_zero_count(f, -0.25, 1.5, -h, h);
    if (inside != real_orders)
        fail(ErrorKind::config, "non-real zeros of L(s+1/2) below the detour; lower detour_height");

    l_one_ = ctx_.l_anywhere(1.0);
    g_three_halves_ = 1.0 / ctx_.l_anywhere(2.0);

    // Tail moments S_k = sum_{n>M} mu n^{-k-3/2}, S'_k = same with log n.
    s_k_.assign(tail_terms, 0.0);
    s_prime_k_.assign(tail_terms, 0.0);
    for (int k = 0; k < tail_terms; ++k) {
        const double sigma = k + 1.5;
        if (sigma >= c_) break;
        const auto t = taylor_at([this](cd w) { return ctx_.l_anywhere(w); }, cd(sigma + 0.5, 0.0), 2, 0.25, 64);
        const double l0 = ctx_.l_anywhere(sigma + 0.5).real();
        const double g = 1.0 / l0, gprime = -t[1].real() / (l0 * l0);
        Accumulator p, q;
        for (std::size_t i = support_.size(); i-- > 0;) {
            const double term = mu_[i] * std::exp(-sigma * log_n_[support_[i]]);
            p.add(term);
            q.add(term * log_n_[support_[i]]);
        }
        s_k_[k] = g - p.value().real();
        s_prime_k_[k] = -gprime - q.value().real();
    }
}

Evaluator::~Evaluator() = default;

cd Evaluator::g(cd s) const {
    const auto key = std::make_pair(bits(s.real()), bits(s.imag()));
    {
        std::shared_lock lock(cache_->mutex);
        auto it = cache_->g.find(key);
        if (it != cache_->g.end()) return it->second;
    }
    const cd value = s.real() >= c_ ? ctx_.mu_dirichlet(s) : 1.0 / ctx_.l_anywhere(s + 0.5);
    std::unique_lock lock(cache_->mutex);
    cache_->g.emplace(key, value);
    return value;
}

// G(3/2 + v) - sum_{n <= M} mu n^{-3/2-v}, v >= 0.
cd Evaluator::g_real_tail(double v) const {
    const double sigma = 1.5 + v;
    if (sigma >= c_) return 0.0;
    {
        std::shared_lock lock(cache_->mutex);
        auto it = cache_->tail.find(bits(v));
        if (it != cache_->tail.end()) return it->second;
    }
    Accumulator p;
    for (std::size_t i = support_.size(); i-- > 0;) p.add(mu_[i] * std::exp(-sigma * log_n_[support_[i]]));
    const cd value = 1.0 / ctx_.l_anywhere(sigma + 0.5).real() - p.value().real();
    std::unique_lock lock(cache_->mutex);
    cache_->tail.emplace(bits(v), value);
    return value;
}

double Evaluator::pole_distance(cd z) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t n : support_) best = std::min(best, std::abs(z - log_n_[n]));
    return best;
}

void Evaluator::check_pole(cd z) const {
    if (pole_distance(z) < contour_.exclusion_radius)
        fail(ErrorKind::domain, "z lies within the exclusion radius of a pole log n");
}

double Evaluator::vertical_end(cd z, double rate, double prefactor) const {
    const double h = contour_.detour_height;
    const double target = 1e-2 * contour_.panel_tolerance;
    double t = h + std::ceil(std::max(contour_.right_tail_height, h + 1.0) - h);
    const double log_pre = std::log(prefactor) + c_ * z.real() - std::log(rate);
    while (log_pre - t * rate > std::log(target)) {
        t += 1.0;
        if (t > 20000.0) fail(ErrorKind::numerical, "tail not converged");
    }
    return t;
}

QuadResult Evaluator::path_integral(cd z, Kernel kernel) const {
    const double h = contour_.detour_height;
    QuadOptions opt;
    opt.abs_tol = contour_.panel_tolerance;
    opt.l1_rel_tol = 1e-14;
    auto integrand = [&](cd s) {
        const cd gs = g(s);
        if (std::abs(gs) > 1e3) fail(ErrorKind::numerical, "contour too close to L-zero");
        cd v = std::exp(s * z) * gs;
        if (kernel == Kernel::tan) v *= tan_pi_minus_i(s);
        return v;
    };

    double left = contour_.left_tail_length;
    while (std::abs(integrand(cd(-left, 1.0))) > 1e-3 * contour_.panel_tolerance) {
        left *= 2.0;
        if (left > 300.0) fail(ErrorKind::numerical, "tail not converged (left half-line)");
    }

    const double rate = kernel == Kernel::plain ? z.imag() : 2.0 * pi + z.imag();
    const double pre = (kernel == Kernel::plain ? 1.0 : 2.01) * m_c_;
    const double top = vertical_end(z, rate, pre);

    QuadResult total;
    auto piece = [&](cd a, cd b) {
        opt.initial_panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) - 1e-9)));
        const QuadResult r = integrate_segment(integrand, a, b, opt);
        total.value += r.value;
        total.error += r.error;
        total.evaluations += r.evaluations;
        total.panels += r.panels;
    };
    piece(cd(-left, 1.0), cd(-0.25, 1.0));
    if (h != 1.0) piece(cd(-0.25, 1.0), cd(-0.25, h));
    piece(cd(-0.25, h), cd(c_, h));
    piece(cd(c_, h), cd(c_, top));
    total.error += pre * std::exp(c_ * z.real() - top * rate) / rate;
    return total;
}

cd Evaluator::m_direct(cd z) const {
    if (!(z.imag() > 0.0)) fail(ErrorKind::domain, "m_direct: requires Im z > 0");
    check_pole(z);
    return path_integral(z, Kernel::plain).value / (2.0 * pi * I);
}

cd Evaluator::m1_integral(cd z) const {
    if (!(z.imag() > -2.0 * pi + 0.5)) fail(ErrorKind::domain, "m1_integral: requires Im z > -2 pi + 0.5");
    return path_integral(z, Kernel::tan).value / (2.0 * pi * I);
}

cd Evaluator::h_integral(cd z) const {
    if (!(z.imag() > -2.0 * pi + 0.5)) fail(ErrorKind::domain, "h_integral: requires Im z > -2 pi + 0.5");
    const double h = contour_.detour_height;
    QuadOptions opt;
    opt.abs_tol = contour_.panel_tolerance;
    opt.l1_rel_tol = 1e-14;
    auto integrand = [&](cd s) { return tan_pi_minus_i(s) * std::exp(s * z) * g(s); };

    // s = 3/2 + i e^u from the corner offset up to the detour height.
    const double u0 = std::log(contour_.corner_offset), u1 = std::log(h);
    opt.initial_panels = std::max(1, static_cast<int>(std::ceil(u1 - u0)));
    cd total = integrate(
                   [&](double u) {
                       const cd dz = I * std::exp(u);
                       return integrand(1.5 + dz) * dz;
                   },
                   u0, u1, opt)
                   .value;
    opt.initial_panels = std::max(1, static_cast<int>(std::ceil(c_ - 1.5)));
    total += integrate_segment(integrand, cd(1.5, h), cd(c_, h), opt).value;
    const double rate = 2.0 * pi + z.imag();
    const double top = vertical_end(z, rate, 2.01 * m_c_);
    opt.initial_panels = static_cast<int>(std::lround(top - h));
    total += integrate_segment(integrand, cd(c_, h), cd(c_, top), opt).value;
    return total / (2.0 * pi * I);
}

SeriesValue Evaluator::m0_partial(cd z, i64 n_max) const {
    if (n_max < 1 || n_max > ctx_.table().limit) fail(ErrorKind::domain, "m0_partial: n_max outside the coefficient table");
    check_pole(z);
    Accumulator acc;
    for (std::size_t i = 0; i < support_.size() && static_cast<i64>(support_[i]) <= n_max; ++i) {
        const std::size_t n = support_[i];
        acc.add(mu_[i] * std::exp(-1.5 * log_n_[n]) / (z - log_n_[n]));
    }
    const double edge = std::log(static_cast<double>(n_max));
    const double dist = z.real() <= edge ? std::abs(z - edge) : std::abs(z.imag());
    return {acc.value(), dist > 0.0 ? divisor_tail_bound(n_max, 1.5) / dist : std::numeric_limits<double>::infinity()};
}

cd Evaluator::m0_series(cd z) const {
    const double edge = log_n_.back();
    if (!(z.real() < edge - 1.0)) fail(ErrorKind::domain, "m0_series: requires Re z < log(n_max) - 1");
    const cd head = m0_partial(z, ctx_.table().limit).value;
    // sum_{n>M} mu n^{-3/2}/(z - log n) = -int_0^inf e^{vz} D_M(3/2+v) dv.
    const double vmax = c_ - 1.5;
    double v_end = z.real() > 0.5 ? std::min(vmax, 11.5 / z.real()) : vmax;
    v_end = std::max(0.25, std::ceil(v_end * 4.0) / 4.0);
    QuadOptions opt;
    // D_M is a difference of O(1) numbers; e^{v x} amplifies its rounding.
    opt.abs_tol = std::max(1e-13, 1e-14 * std::exp(v_end * std::max(0.0, z.real())));
    opt.initial_panels = static_cast<int>(std::lround(v_end * 4.0));
    const cd tail = integrate([&](double v) { return std::exp(v * z) * g_real_tail(v); }, 0.0, v_end, opt).value;
    return head - tail;
}

// Sum over n beyond the table of mu/n f(A/sqrt n) for f = Hreg (0), J1 (1) or
// -Y1 - 2/(pi w) (2), from the power series of f and the tail moments.
cd Evaluator::tail_series(cd z, int which) const {
    const cd log_a = std::log(4.0 * pi / std::sqrt(ctx_.conductor())) - 0.5 * z;
    const cd log_half_a = log_a - std::log(2.0);
    cd sum = 0.0;
    for (int k = 0; k < tail_terms; ++k) {
        if (s_k_[k] == 0.0 && s_prime_k_[k] == 0.0) continue;
        const cd a_pow = std::exp(double(2 * k + 1) * log_a);
        const double c = j1_coeff(k), d = y1_tail_coeff(k);
        cd term;
        switch (which) {
            case 0:
                term = (c - I * d - I * (2.0 / pi) * c * log_half_a) * s_k_[k] + I * (c / pi) * s_prime_k_[k];
                break;
            case 1:
                term = c * s_k_[k];
                break;
            default:
                term = -(d + (2.0 / pi) * c * log_half_a) * s_k_[k] + (c / pi) * s_prime_k_[k];
                break;
        }
        sum += a_pow * term;
    }
    return sum;
}

cd Evaluator::hankel_sum(cd z) const {
    const cd a = (4.0 * pi / std::sqrt(ctx_.conductor())) * std::exp(-0.5 * z);
    Accumulator acc;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        const double n = static_cast<double>(support_[i]);
        acc.add(mu_[i] / n * hankel2_1_regularized(a / std::sqrt(n)));
    }
    return acc.value() + tail_series(z, 0);
}

cd Evaluator::j1_sum(cd z) const {
    const cd a = (4.0 * pi / std::sqrt(ctx_.conductor())) * std::exp(-0.5 * z);
    Accumulator acc;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        const double n = static_cast<double>(support_[i]);
        acc.add(mu_[i] / n * bessel_j1(a / std::sqrt(n)));
    }
    return acc.value() + tail_series(z, 1);
}

cd Evaluator::y1_sum(cd z) const {
    const cd a = (4.0 * pi / std::sqrt(ctx_.conductor())) * std::exp(-0.5 * z);
    Accumulator acc;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        const double n = static_cast<double>(support_[i]);
        const cd w = a / std::sqrt(n);
        acc.add(mu_[i] / n * (-bessel_y1(w) - 2.0 / (pi * w)));
    }
    return acc.value() + tail_series(z, 2);
}

cd Evaluator::r_term(cd z) const { return ecmobius::r_term(zeros_, z); }

cd Evaluator::r_star_term(cd z) const { return ecmobius::r_star_term(zeros_, l_one_, z); }

cd Evaluator::corner_term(cd z) const { return -I / (4.0 * pi) * std::exp(1.5 * z) * g_three_halves_; }

cd Evaluator::fe_rhs(cd z) const {
    const double eta = ctx_.root_number();
    return -(2.0 * pi / (eta * std::sqrt(ctx_.conductor()))) * j1_sum(z) - r_term(z);
}

Formula8Parts Evaluator::formula8_parts(cd z) const {
    if (!(std::abs(z.imag()) < 2.0 * pi - 0.5)) fail(ErrorKind::domain, "formula8: requires |Im z| < 2 pi - 0.5");
    check_pole(z);
    const double eta = ctx_.root_number();
    const cd zc = std::conj(z);
    Formula8Parts p;
    p.hankel = -(pi / (eta * std::sqrt(ctx_.conductor()))) * hankel_sum(z);
    p.residues = -0.5 * (r_term(z) - I * r_star_term(z));
    const cd hz = h_integral(z);
    const cd hc = z.imag() == 0.0 ? hz : h_integral(zc);
    p.h_part = (hz + std::conj(hc)) / (2.0 * I);
    p.m0_part = -std::exp(1.5 * z) / (2.0 * pi * I) * m0_series(z);
    const cd m1z = m1_integral(z);
    const cd m1c = z.imag() == 0.0 ? m1z : m1_integral(zc);
    p.m1_part = -(m1z + std::conj(m1c)) / (2.0 * I);
    p.corner = corner_term(z);
    return p;
}

double Evaluator::real_axis_im(double x) const {
    check_pole(x);
    const double eta = ctx_.root_number();
    const double e = std::exp(1.5 * x);
    return -(pi / (eta * std::sqrt(ctx_.conductor()))) * y1_sum(x).real() + e / (2.0 * pi) * m0_series(x).real() -
           h_integral(x).real() + m1_integral(x).real() + 0.5 * r_star_term(x).real() -
           e * g_three_halves_.real() / (4.0 * pi);
}

double Evaluator::real_axis_re(double x) const {
    check_pole(x);
    const double eta = ctx_.root_number();
    return -(pi / (eta * std::sqrt(ctx_.conductor()))) * j1_sum(x).real() - 0.5 * r_term(x).real();
}

namespace {

double pole_gap(const std::vector<std::size_t>& support, const std::vector<double>& log_n, i64 n) {
    const double center = std::log(static_cast<double>(n));
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t m : support)
        if (static_cast<i64>(m) != n) gap = std::min(gap, std::abs(log_n[m] - center));
    return gap;
}

}  // namespace

double Evaluator::default_residue_radius(i64 n) const {
    if (n < 1 || n > ctx_.table().limit) fail(ErrorKind::domain, "residue: n outside the coefficient table");
    return std::min(0.25, 0.4 * pole_gap(support_, log_n_, n));
}

cd Evaluator::residue_at_log_n(i64 n, double radius) const {
    const double fallback = default_residue_radius(n);
    if (radius <= 0.0) radius = fallback;
    if (radius >= 0.5 * pole_gap(support_, log_n_, n) || radius > 1.0) fail(ErrorKind::domain, "residue circle must stay within half the gap to other poles");
    constexpr int nodes = 128;
    const cd center = std::log(static_cast<double>(n));
    std::vector<cd> values(nodes);
    parallel_for(nodes, [&](std::size_t k) {
        const cd e = std::polar(1.0, 2.0 * pi * double(k) / nodes);
        values[k] = formula8_rhs(center + radius * e) * (radius * e);
    });
    Accumulator acc;
    for (const cd& v : values) acc.add(v);
    return acc.value() / double(nodes);
}

}  // namespace ecmobius
