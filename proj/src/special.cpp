#include "ecmobius/special.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "ecmobius/errors.hpp"

namespace ecmobius {

namespace {

constexpr cd I{0.0, 1.0};

void check_overflow(cd w, const char* who) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || std::abs(w.imag()) > 700.0)
        fail(ErrorKind::domain, std::string(who) + ": argument out of range (overflow)");
}

// Ascending series sums sharing the same recursion. `half` is w/2.
cd series_j0(cd half) {
    const cd q = -half * half;
    cd term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (double(k) * k);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2) break;
    }
    return sum;
}

cd series_j1(cd half) {
    const cd q = -half * half;
    cd term = half, sum = half;
    for (int k = 1; k < 200; ++k) {
        term *= q / (double(k) * (k + 1));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2) break;
    }
    return sum;
}

// (2/pi) sum_{k>=1} (-1)^{k+1} H_k (w^2/4)^k / (k!)^2
cd series_y0_tail(cd half) {
    const cd q = -half * half;
    cd term = 1.0, sum = 0.0;
    double harmonic = 0.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (double(k) * k);
        harmonic += 1.0 / k;
        const cd add = -harmonic * term;
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum) && k > 2) break;
    }
    return (2.0 / pi) * sum;
}

// -(1/pi) sum_{k>=0} (psi(k+1) + psi(k+2)) (-1)^k (w/2)^{2k+1} / (k!(k+1)!)
cd series_y1_tail(cd half) {
    const cd q = -half * half;
    cd term = half;
    double psi_a = -euler_gamma, psi_b = 1.0 - euler_gamma;  // psi(1), psi(2)
    cd sum = (psi_a + psi_b) * term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (double(k) * (k + 1));
        psi_a += 1.0 / k;
        psi_b += 1.0 / (k + 1);
        const cd add = (psi_a + psi_b) * term;
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum) && k > 2) break;
    }
    return -sum / pi;
}

// Hankel asymptotic pair (H1, H2) for order nu in {0, 1}; Re w >= 0 assumed.
void hankel_asymptotic(int nu, cd w, cd& h1, cd& h2) {
    const double mu = 4.0 * nu * nu;
    cd s1 = 1.0, s2 = 1.0;  // sums with i^k and (-i)^k
    cd ak = 1.0;
    cd ipow = 1.0;
    double last = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        ak *= (mu - odd * odd) / (k * 8.0) / w;
        const double mag = std::abs(ak);
        if (mag > last) break;  // asymptotic series started to diverge
        ipow *= I;
        s1 += ipow * ak;
        s2 += std::conj(ipow) * ak;
        last = mag;
        if (mag < 1e-17) break;
    }
    const cd pre = std::sqrt(2.0 / (pi * w));
    const cd phase = w - (nu * 0.5 + 0.25) * pi;
    h1 = pre * std::exp(I * phase) * s1;
    h2 = pre * std::exp(-I * phase) * s2;
}

// J_nu and Y_nu for |w| > switch radius; reflection handles Re w < 0.
void bessel_large(int nu, cd w, cd& j, cd& y) {
    if (w.real() >= 0.0) {
        cd h1, h2;
        hankel_asymptotic(nu, w, h1, h2);
        j = 0.5 * (h1 + h2);
        y = (h1 - h2) / (2.0 * I);
        return;
    }
    // w = (-w) e^{+i pi} for Im w >= 0, (-w) e^{-i pi} otherwise.
    cd jm, ym;
    bessel_large(nu, -w, jm, ym);
    const double sign = w.imag() >= 0.0 ? 1.0 : -1.0;
    if (nu == 0) {
        j = jm;
        y = ym + sign * 2.0 * I * jm;
    } else {
        j = -jm;
        y = -ym - sign * 2.0 * I * jm;
    }
}

// log(w/2) on the principal branch with the negative axis taken from above.
cd log_half(cd w) {
    cd h = 0.5 * w;
    if (h.imag() == 0.0 && h.real() < 0.0) h = cd(h.real(), 0.0);  // drop a signed -0
    return std::log(h);
}

}  // namespace

cd bessel_j0(cd w) {
    check_overflow(w, "bessel_j0");
    if (std::abs(w) <= bessel_switch_radius) return series_j0(0.5 * w);
    cd j, y;
    bessel_large(0, w, j, y);
    return j;
}

cd bessel_j1(cd w) {
    check_overflow(w, "bessel_j1");
    if (std::abs(w) <= bessel_switch_radius) return series_j1(0.5 * w);
    cd j, y;
    bessel_large(1, w, j, y);
    return j;
}

cd bessel_y0(cd w) {
    check_overflow(w, "bessel_y0");
    if (w == cd(0.0)) fail(ErrorKind::domain, "bessel_y0: pole at w = 0");
    if (std::abs(w) <= bessel_switch_radius) {
        const cd half = 0.5 * w;
        return (2.0 / pi) * (log_half(w) + euler_gamma) * series_j0(half) + series_y0_tail(half);
    }
    cd j, y;
    bessel_large(0, w, j, y);
    return y;
}

cd bessel_y1_regular_part(cd w) {
    check_overflow(w, "bessel_y1");
    if (w == cd(0.0)) return 0.0;
    if (std::abs(w) <= 1.0) {
        const cd half = 0.5 * w;
        return (2.0 / pi) * log_half(w) * series_j1(half) + series_y1_tail(half);
    }
    return bessel_y1(w) + 2.0 / (pi * w);
}

cd bessel_y1(cd w) {
    check_overflow(w, "bessel_y1");
    if (w == cd(0.0)) fail(ErrorKind::domain, "bessel_y1: pole at w = 0");
    if (std::abs(w) <= bessel_switch_radius) {
        const cd half = 0.5 * w;
        return -2.0 / (pi * w) + (2.0 / pi) * log_half(w) * series_j1(half) + series_y1_tail(half);
    }
    cd j, y;
    bessel_large(1, w, j, y);
    return y;
}

cd hankel2_1(cd w) {
    if (w == cd(0.0)) fail(ErrorKind::domain, "hankel2_1: pole at w = 0");
    return bessel_j1(w) - I * bessel_y1(w);
}

cd hankel2_1_regularized(cd w) {
    if (w == cd(0.0)) return 0.0;
    if (std::abs(w) <= 1.0) return bessel_j1(w) - I * bessel_y1_regular_part(w);
    return hankel2_1(w) - 2.0 * I / (pi * w);
}

cd log_gamma(cd s) {
    if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real()))
        fail(ErrorKind::domain, "log_gamma: pole at a nonpositive integer");
    // Shift right with the recurrence, then Stirling with Bernoulli terms.
    cd shift_log = 0.0;
    cd z = s;
    while (z.real() < 15.0) {
        shift_log += std::log(z);
        z += 1.0;
    }
    static constexpr std::array<double, 10> bernoulli = {
        1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510, 43867.0 / 798,
        -174611.0 / 330};
    const cd inv = 1.0 / z, inv2 = inv * inv;
    cd corr = 0.0, pw = inv;
    for (std::size_t k = 0; k < bernoulli.size(); ++k) {
        const double n = 2.0 * (k + 1);
        corr += bernoulli[k] / (n * (n - 1.0)) * pw;
        pw *= inv2;
    }
    const cd stirling = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + corr;
    return stirling - shift_log;
}

namespace {

cd incomplete_gamma_cf(cd s, double x) {
    constexpr double tiny = 1e-300;
    cd b = x + 1.0 - s;
    cd c = 1.0 / tiny;
    cd d = 1.0 / b;
    cd h = d;
    for (int i = 1; i < 20000; ++i) {
        const cd an = -double(i) * (double(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const cd del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return std::exp(s * std::log(x) - x) * h;
    }
    fail(ErrorKind::numerical, "upper_incomplete_gamma: continued fraction did not converge");
}

// Gamma(s) - gamma(s, x) with gamma by its power series.
cd incomplete_gamma_series(cd s, double x) {
    cd term = 1.0 / s, sum = term;
    for (int k = 1; k < 20000; ++k) {
        term *= x / (s + double(k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    const cd lower = std::exp(s * std::log(x) - x) * sum;
    return std::exp(log_gamma(s)) - lower;
}

bool near_pole(cd s) {
    if (std::abs(s.imag()) > 1e-6 || s.real() > 0.5) return false;
    return std::abs(s.real() - std::round(s.real())) < 1e-6;
}

}  // namespace

cd upper_incomplete_gamma(cd s, double x) {
    if (!(x > 0.0)) fail(ErrorKind::domain, "upper_incomplete_gamma: x must be positive");
    if (x >= std::abs(s) + 1.0 || (x >= 1.0 && s.real() < 1.5)) return incomplete_gamma_cf(s, x);
    if (near_pole(s)) {
        // Gamma(., x) is entire; the series has cancelling poles here. The
        // symmetric average is second-order accurate in the offset.
        const double h = 1e-4;
        return 0.5 * (incomplete_gamma_series(s + cd(0.0, h), x) + incomplete_gamma_series(s - cd(0.0, h), x));
    }
    return incomplete_gamma_series(s, x);
}

namespace {

// exp(w) - 1 without cancellation for small |w|.
cd expm1_complex(cd w) {
    const double x = w.real(), y = w.imag();
    const double sh = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * sh * sh, std::exp(x) * std::sin(y)};
}

}  // namespace

cd tan_pi_minus_i(cd s) {
    // Work relative to the nearest pole: s = 1/2 + k + u, q = exp(2 pi i s) = -exp(w).
    const double k = std::round(s.real() - 0.5);
    const cd u = s - 0.5 - k;
    if (u == cd(0.0)) fail(ErrorKind::domain, "tan_pi_minus_i: pole at a half-integer");
    const cd w = cd(0.0, 2.0 * pi) * u;
    if (w.real() <= 0.0) return -2.0 * I * std::exp(w) / expm1_complex(w);
    return 2.0 * I / expm1_complex(-w);
}

double digamma_int(int n) {
    double h = 0.0;
    for (int k = 1; k < n; ++k) h += 1.0 / k;
    return -euler_gamma + h;
}

}  // namespace ecmobius
