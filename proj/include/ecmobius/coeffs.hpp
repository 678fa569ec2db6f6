#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "ecmobius/curve.hpp"

namespace ecmobius {

/// mu_E(n) held exactly as numer / sqrt(sqfree).
struct MoebiusCoeff {
    i64 numer = 0;
    i64 sqfree = 1;

    double value() const { return numer == 0 ? 0.0 : static_cast<double>(numer) / std::sqrt(static_cast<double>(sqfree)); }
    bool is_zero() const { return numer == 0; }

    friend bool operator==(const MoebiusCoeff&, const MoebiusCoeff&) = default;
};

/// Product of coefficients at coprime arguments (square-free parts coprime).
MoebiusCoeff operator*(const MoebiusCoeff& x, const MoebiusCoeff& y);

/// Local Euler factor description for one prime: 1 - a_p p^-s (+ p^{1-2s} if good).
struct LocalFactor {
    int ap = 0;
    bool good = true;
};

/// Dirichlet coefficients a_n of L(s,E) and mu_E(n) of 1/L(s+1/2,E),
/// indexed 1..limit (index 0 unused).
struct CoefficientTable {
    i64 limit = 0;
    std::vector<i64> a;
    std::vector<MoebiusCoeff> mu;

    double mu_value(i64 n) const { return mu[static_cast<std::size_t>(n)].value(); }
};

/// Table from an arbitrary prime -> local factor map. Both a_n and mu_E(n)
/// are filled by a linear sieve over smallest prime factors.
CoefficientTable build_table(i64 n_max, const std::function<LocalFactor(i64)>& local);

/// Table of the curve's L-function. A prime is treated as bad exactly when it
/// divides the conductor.
CoefficientTable build_table(const CurveSpec& curve, i64 n_max);

/// Only the a_n part (mu left empty).
CoefficientTable build_a_table(const CurveSpec& curve, i64 n_max);

/// Only the mu_E part (a left empty).
CoefficientTable build_mu_table(const CurveSpec& curve, i64 n_max);

/// max_{n <= n_max} | sum_{d|n} mu_E(d) a_{n/d} (n/d)^{-1/2} - [n = 1] |.
/// Inner sums run in ascending d.
double convolution_check(const CoefficientTable& table, i64 n_max);

/// Upper bound for sum_{n > m} d(n) n^{-sigma}, sigma > 1, by integral
/// comparison with x^{-sigma}(log x + 1). Used for every divisor-bound tail.
double divisor_tail_bound(i64 m, double sigma);

}  // namespace ecmobius
