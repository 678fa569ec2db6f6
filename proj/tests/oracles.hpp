#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// into the library beyond its plain types.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using i64 = std::int64_t;

inline constexpr double pi = 3.14159265358979323846;

inline i64 mod(i64 x, i64 p) {
    x %= p;
    return x < 0 ? x + p : x;
}

/// #E(F_p) by counting y^2 = x^3 + a x + b directly (infinity included).
inline i64 brute_count(i64 a, i64 b, i64 p) {
    std::vector<int> squares(static_cast<std::size_t>(p), 0);
    for (i64 y = 0; y < p; ++y) squares[static_cast<std::size_t>(y * y % p)]++;
    i64 count = 1;
    for (i64 x = 0; x < p; ++x) {
        const i64 rhs = mod(mod(mod(x * x, p) * x, p) + mod(a, p) * x + mod(b, p), p);
        count += squares[static_cast<std::size_t>(rhs)];
    }
    return count;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// a_n of L(s,E) by multiplying out the Euler product, with a_p = p + 1 -
/// #E(F_p) from the brute count (exact for good and multiplicative primes
/// p >= 5) and explicit values for p in `fixed`.
inline std::vector<i64> euler_product_coeffs(i64 a, i64 b, i64 conductor, i64 limit, const std::map<i64, i64>& fixed) {
    std::vector<i64> d(static_cast<std::size_t>(limit + 1), 0);
    d[1] = 1;
    for (i64 p = 2; p <= limit; ++p) {
        if (!is_prime(p)) continue;
        const i64 ap = fixed.count(p) ? fixed.at(p) : p + 1 - brute_count(a, b, p);
        const bool good = conductor % p != 0;
        // local series c_k of 1/(1 - ap X + p X^2) or 1/(1 - ap X)
        std::vector<i64> c{1};
        for (i64 pk = 1; pk <= limit / p;) {
            pk *= p;
            const std::size_t k = c.size();
            c.push_back(ap * c[k - 1] - (good && k >= 2 ? p * c[k - 2] : 0));
        }
        std::vector<i64> out(d.size(), 0);
        for (i64 n = 1; n <= limit; ++n) {
            if (d[static_cast<std::size_t>(n)] == 0 || n % p == 0) continue;
            i64 m = n;
            for (std::size_t k = 0; k < c.size(); ++k) {
                out[static_cast<std::size_t>(m)] += d[static_cast<std::size_t>(n)] * c[k];
                if (m > limit / p) break;
                m *= p;
            }
        }
        d.swap(out);
    }
    return d;
}

/// Dirichlet inverse of b_n by the defining recursion.
inline std::vector<double> dirichlet_inverse(const std::vector<double>& b) {
    std::vector<double> inv(b.size(), 0.0);
    inv[1] = 1.0 / b[1];
    for (std::size_t n = 2; n < b.size(); ++n) {
        double s = 0.0;
        for (std::size_t d = 1; d < n; ++d)
            if (n % d == 0) s += inv[d] * b[n / d];
        inv[n] = -s / b[1];
    }
    return inv;
}

/// Composite Simpson rule with n (even) intervals.
template <class F>
auto simpson(F f, double lo, double hi, int n) -> decltype(f(lo)) {
    const double h = (hi - lo) / n;
    auto sum = f(lo) + f(hi);
    for (int k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(lo + k * h);
    return sum * (h / 3.0);
}

/// J_n(w) = (1/2 pi) int_0^{2 pi} e^{i(w sin t - n t)} dt, trapezoid on the period.
inline cd bessel_j(int n, cd w, int nodes = 400) {
    cd sum = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const double t = 2.0 * pi * k / nodes;
        sum += std::exp(cd(0.0, 1.0) * (w * std::sin(t) - static_cast<double>(n) * t));
    }
    return sum / static_cast<double>(nodes);
}

/// Y_n(x), x > 0, from the Schlaefli-type integral representation.
inline double bessel_y(int n, double x) {
    const double first = simpson([&](double t) { return std::sin(x * std::sin(t) - n * t); }, 0.0, pi, 4000) / pi;
    const double upper = std::asinh(60.0 / x) + 1.0;
    const double second =
        simpson([&](double t) { return (std::exp(n * t) + (n % 2 ? -1.0 : 1.0) * std::exp(-n * t)) * std::exp(-x * std::sinh(t)); },
                0.0, upper, 40000) /
        pi;
    return first - second;
}

/// Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt with t = x e^v.
inline cd upper_gamma(cd s, double x) {
    const double upper = std::log(80.0 / x) + 2.0;
    return simpson([&](double v) { return std::exp(s * (std::log(x) + v) - x * std::exp(v)); }, 0.0, std::max(upper, 2.0),
                   60000);
}

/// (1/2 pi i) closed integral of f around c, trapezoid with n nodes.
inline cd circle_residue(const std::function<cd(cd)>& f, cd c, double r, int n = 512) {
    cd sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const cd e = std::polar(1.0, 2.0 * pi * k / n);
        sum += f(c + r * e) * r * e;
    }
    return sum / static_cast<double>(n);
}

}  // namespace oracle
