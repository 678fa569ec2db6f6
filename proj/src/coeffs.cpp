#include "ecmobius/coeffs.hpp"

#include <algorithm>
#include <cmath>

#include "ecmobius/errors.hpp"

namespace ecmobius {

MoebiusCoeff operator*(const MoebiusCoeff& x, const MoebiusCoeff& y) {
    if (x.is_zero() || y.is_zero()) return {0, 1};
    return {x.numer * y.numer, x.sqfree * y.sqfree};
}

CoefficientTable build_table(i64 n_max, const std::function<LocalFactor(i64)>& local) {
    if (n_max < 1) fail(ErrorKind::config, "n_max must be at least 1");
    const auto n = static_cast<std::size_t>(n_max);
    CoefficientTable t;
    t.limit = n_max;
    t.a.assign(n + 1, 0);
    t.mu.assign(n + 1, MoebiusCoeff{0, 1});
    t.a[1] = 1;
    t.mu[1] = {1, 1};

    // Smallest-prime-factor sieve.
    std::vector<i64> spf(n + 1, 0);
    for (i64 i = 2; i <= n_max; ++i) {
        if (spf[i] != 0) continue;
        for (i64 j = i; j <= n_max; j += i)
            if (spf[j] == 0) spf[j] = i;
    }

    for (i64 m = 2; m <= n_max; ++m) {
        const i64 p = spf[m];
        i64 pk = p, e = 1, rest = m / p;
        while (rest % p == 0) {
            rest /= p;
            pk *= p;
            ++e;
        }
        if (rest != 1) {
            t.a[m] = t.a[pk] * t.a[rest];
            t.mu[m] = t.mu[pk] * t.mu[rest];
            continue;
        }
        // m = p^e is a prime power; p < m for e >= 2 so lower powers are filled.
        if (e == 1) {
            const LocalFactor lf = local(p);
            t.a[p] = lf.ap;
            t.mu[p] = lf.ap == 0 ? MoebiusCoeff{0, 1} : MoebiusCoeff{-lf.ap, p};
            continue;
        }
        const LocalFactor lf = local(p);
        const i64 prev = pk / p, prev2 = prev / p;
        t.a[m] = lf.good ? lf.ap * t.a[prev] - p * t.a[prev2] : lf.ap * t.a[prev];
        t.mu[m] = (e == 2 && lf.good) ? MoebiusCoeff{1, 1} : MoebiusCoeff{0, 1};
    }
    return t;
}

CoefficientTable build_table(const CurveSpec& curve, i64 n_max) {
    if (n_max < 1) fail(ErrorKind::config, "n_max must be at least 1");
    const std::vector<ReductionInfo> data = local_data_upto(curve, n_max);
    std::vector<LocalFactor> by_prime(static_cast<std::size_t>(n_max) + 1);
    for (const auto& r : data) by_prime[static_cast<std::size_t>(r.prime)] = {r.ap, !curve.is_bad(r.prime)};
    return build_table(n_max, [&](i64 p) { return by_prime[static_cast<std::size_t>(p)]; });
}

CoefficientTable build_a_table(const CurveSpec& curve, i64 n_max) {
    CoefficientTable t = build_table(curve, n_max);
    t.mu.clear();
    return t;
}

CoefficientTable build_mu_table(const CurveSpec& curve, i64 n_max) {
    CoefficientTable t = build_table(curve, n_max);
    t.a.clear();
    return t;
}

double convolution_check(const CoefficientTable& table, i64 n_max) {
    n_max = std::min(n_max, table.limit);
    const auto n = static_cast<std::size_t>(n_max);
    if (table.a.size() <= n || table.mu.size() <= n) fail(ErrorKind::config, "convolution_check: table too short");
    std::vector<double> scaled_a(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) scaled_a[k] = static_cast<double>(table.a[k]) / std::sqrt(static_cast<double>(k));
    std::vector<double> acc(n + 1, 0.0);
    for (std::size_t d = 1; d <= n; ++d) {
        const double mu = table.mu[d].value();
        if (mu == 0.0) continue;
        for (std::size_t k = 1, m = d; m <= n; ++k, m += d) acc[m] += mu * scaled_a[k];
    }
    double worst = std::abs(acc[1] - 1.0);
    for (std::size_t m = 2; m <= n; ++m) worst = std::max(worst, std::abs(acc[m]));
    return worst;
}

double divisor_tail_bound(i64 m, double sigma) {
    const double mm = static_cast<double>(std::max<i64>(m, 1));
    const double s1 = sigma - 1.0;
    const double pw = std::pow(mm, -s1);
    return sigma * ((std::log(mm) + 1.0) * pw / s1 + pw / (s1 * s1));
}

}  // namespace ecmobius
