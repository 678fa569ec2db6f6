#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ecmobius/coeffs.hpp"
#include "ecmobius/curve.hpp"
#include "ecmobius/special.hpp"

namespace ecmobius {

/// A function s -> L(s + 1/2). Zero search and Taylor extraction work on any
/// such function so that synthetic Dirichlet polynomials can be used as well.
using ShiftedL = std::function<cd(cd)>;

/// A real zero beta of L(s + 1/2) with the leading Taylor coefficients of
/// L(s + 1/2) at s = beta (taylor[j] is the coefficient of (s - beta)^j).
struct ZeroRecord {
    double beta = 0.0;
    int order = 0;
    std::vector<cd> taylor;
};

struct DirichletValue {
    cd value;
    double tail_bound;
};

struct LOptions {
    double tol_zero = 1e-8;
    /// Target absolute size of neglected terms in the smoothed sums.
    double truncation = 1e-18;
};

/// L(s,E) of a curve: Dirichlet series where it converges fast, the
/// incomplete-gamma smoothed sum for the completed function elsewhere, and the
/// functional equation to the left of Re s = 1.
///
/// The root number is always detected from the coefficients. A supplied sign
/// that disagrees is overridden and a warning is recorded.
class LContext {
public:
    LContext(CurveSpec curve, CoefficientTable table, LOptions opts = {});

    const CurveSpec& curve() const { return curve_; }
    const CoefficientTable& table() const { return table_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    const LOptions& options() const { return opts_; }
    int root_number() const { return eta_; }
    double conductor() const { return static_cast<double>(curve_.conductor); }
    /// sqrt(N) / (2 pi), the scale of the gamma factor.
    double scale() const { return scale_; }

    /// Plain partial sum sum_{n <= limit} a_n n^{-s} with the divisor-bound
    /// estimate of the neglected tail. Requires Re s >= 1.75.
    DirichletValue l_dirichlet(cd s) const;

    /// Lambda(s) = (sqrt N / 2 pi)^s Gamma(s) L(s) by the smoothed sum with the
    /// Mellin integral split at t = split. With split = 1 the sum is symmetric
    /// by construction; any other split gives a genuine test of the sign.
    cd lambda_completed(cd s, double split = 1.0) const { return lambda_with_sign(s, eta_, split); }
    cd lambda_with_sign(cd s, int eta, double split) const;

    /// L(s,E) anywhere in the plane (entire).
    cd l_anywhere(cd s) const;

    /// 1 / L(s + 1/2, E).
    cd inverse_shifted(cd s) const;

    /// sum_{n <= limit} mu_E(n) n^{-s}; only accurate where the divisor tail
    /// bound at Re s is negligible (see mu_dirichlet_abscissa()).
    cd mu_dirichlet(cd s) const;
    /// sum_{n <= limit} |mu_E(n)| n^{-sigma} plus the divisor tail bound.
    double mu_abs_sum(double sigma) const;

    /// Smallest abscissa (rounded up to a quarter) where the neglected mu_E
    /// tail is below 1e-16.
    double mu_dirichlet_abscissa() const { return mu_abscissa_; }
    /// Same for the a_n series of L(s).
    double a_dirichlet_abscissa() const { return a_abscissa_; }

    ShiftedL shifted() const {
        return [this](cd s) { return l_anywhere(s + 0.5); };
    }

private:
    cd smoothed_l(cd s) const;
    cd dirichlet_l(cd s) const;

    CurveSpec curve_;
    CoefficientTable table_;
    LOptions opts_;
    int eta_ = 1;
    double scale_ = 1.0;
    double log_scale_ = 0.0;
    double mu_abscissa_ = 0.0;
    double a_abscissa_ = 0.0;
    std::vector<double> a_values_;    // a_n as doubles
    std::vector<double> log_n_;       // log n
    std::vector<std::size_t> mu_support_;  // n with mu_E(n) != 0
    std::vector<double> mu_values_;   // mu_E(n) for n in mu_support_
    std::vector<std::string> warnings_;
};

/// Root number from the functional equation at three fixed probe points,
/// using an asymmetric split of the smoothed sum. Throws
/// ErrorKind::numerical ("ambiguous root number") unless exactly one sign
/// passes.
int detect_root_number(const LContext& ctx);

/// Worst normalized defect |Lambda(s) - eta Lambda(2-s)| / (1 + |Lambda(s)|)
/// over the given points (asymmetric split).
double lambda_symmetry_defect(const LContext& ctx, const std::vector<cd>& points);

/// Taylor coefficients c_0..c_{count-1} of f at s0 from the N-node trapezoid
/// rule on |s - s0| = radius. With `verify`, repeats with 2N nodes and throws
/// ErrorKind::numerical if the two disagree beyond 1e-9 (relative to 1).
std::vector<cd> taylor_at(const ShiftedL& f, cd s0, int count, double radius, int nodes = 256, bool verify = true);

/// Winding number of f around the boundary of [x0,x1] x [y0,y1], i.e. the
/// number of zeros inside (argument principle via tracked phase increments).
int rectangle_zero_count(const ShiftedL& f, double x0, double x1, double y0, double y1);

/// Real zeros of f = L(s + 1/2) in (lo, hi): grid scan at step 1/512 with
/// bisection to 1e-12, plus a dedicated Taylor test at s = 1/2 for even-order
/// central zeros. Records are sorted by beta. Orders above 2 are rejected.
std::vector<ZeroRecord> find_real_zeros(const ShiftedL& f, double lo = 0.0, double hi = 1.0, double tol_zero = 1e-8);

/// Synthetic L-function given by a finite Dirichlet polynomial
/// sum_n a_n n^{-s}; used to exercise zero and residue code paths.
struct DirichletPolynomial {
    std::vector<std::pair<int, double>> terms;  // (n, a_n)
    cd operator()(cd s) const;                   // value at s (not shifted)
    ShiftedL shifted() const {
        return [p = *this](cd s) { return p(s + 0.5); };
    }
};

}  // namespace ecmobius
