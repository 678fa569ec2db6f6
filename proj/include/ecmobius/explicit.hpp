#pragma once

#include <memory>
#include <vector>

#include "ecmobius/lfunc.hpp"
#include "ecmobius/quadrature.hpp"

namespace ecmobius {

/// The integration path for m(z): the half-line sigma + i (sigma <= -1/4), a
/// detour at height h that meets the vertical half-line Re s = 3/2. Since G is
/// holomorphic for Re s > 1 the vertical half-line is moved right to the
/// abscissa where the mu_E Dirichlet series is exact to double precision.
struct ContourSpec {
    double detour_height = 1.0;
    double left_tail_length = 30.0;
    double right_tail_height = 40.0;
    double panel_tolerance = 1e-10;
    /// H(z) starts at 3/2 + i*corner_offset (tan has a pole at 3/2).
    double corner_offset = 1e-12;
    /// Minimum distance from z to a pole log n (mu_E(n) != 0).
    double exclusion_radius = 1e-6;
};

struct SeriesValue {
    cd value;
    double tail_bound = 0.0;
};

/// The groups of the explicit formula for m(z).
struct Formula8Parts {
    cd hankel;     // -(pi/(eta sqrt N)) sum mu/n Hreg(w_n)
    cd residues;   // -(R - i R*)/2
    cd h_part;     // (H(z) + conj H(conj z)) / 2i
    cd m0_part;    // -e^{3z/2} m0(z) / 2 pi i
    cd m1_part;    // -(m1(z) + conj m1(conj z)) / 2i
    cd corner;     // half residue of tan(pi s) G(s) e^{sz} at s = 3/2
    cd total() const { return hankel + residues + h_part + m0_part + m1_part + corner; }
};

/// Residue sum R(z) over the given real zeros.
cd r_term(const std::vector<ZeroRecord>& zeros, cd z);

/// R*(z): residue of tan(pi s) e^{sz}/L(s+1/2) at s = 1/2 plus the residues at
/// the other listed zeros. `central_value` is L(1) and is used only when no
/// zero at 1/2 is listed.
cd r_star_term(const std::vector<ZeroRecord>& zeros, cd central_value, cd z);

/// Residue sum of Gamma(s+1/2)/Gamma(3/2-s) X^s truncated to K terms against
/// J_1(2/sqrt X).
double mellin_j1_check(double X, int K = 60);
/// Residue sum of Gamma(s+1/2)Gamma(s-1/2)/(Gamma(s)Gamma(1-s)) X^s against
/// -Y_1(w) - 2/(pi w), w = 2/sqrt X.
double mellin_y1_check(double X, int K = 60);
/// The Y_1 residue sum itself.
cd mellin_y1_sum(double X, int K = 60);

/// m(z, E) and the terms of its explicit formula for one curve.
///
/// Construction finds the real zeros of L(s+1/2) in (0,1), certifies that the
/// detour rectangle holds no other zeros and precomputes the mu_E tail
/// moments used to accelerate the slowly convergent series. Values of
/// 1/L(s+1/2) at quadrature nodes are cached; all methods are thread safe.
class Evaluator {
public:
    explicit Evaluator(const LContext& ctx, ContourSpec contour = {});
    ~Evaluator();
    Evaluator(const Evaluator&) = delete;
    Evaluator& operator=(const Evaluator&) = delete;

    const LContext& context() const { return ctx_; }
    const ContourSpec& contour() const { return contour_; }
    const std::vector<ZeroRecord>& zeros() const { return zeros_; }

    /// G(s) = 1/L(s+1/2).
    cd g(cd s) const;

    /// Distance from z to the nearest pole log n, mu_E(n) != 0, n <= n_max.
    double pole_distance(cd z) const;

    /// m(z) by contour integration; Im z > 0.
    cd m_direct(cd z) const;
    /// sum_{n <= n_max} mu_E(n) n^{-3/2}/(z - log n) with the divisor tail bound.
    SeriesValue m0_partial(cd z, i64 n_max) const;
    /// m0(z) with the tail beyond the table summed through the Laplace
    /// transform of the mu_E Dirichlet tail. Requires Re z < log(n_max) - 1.
    cd m0_series(cd z) const;
    cd m1_integral(cd z) const;
    cd h_integral(cd z) const;

    /// sum mu/n Hreg(w_n), sum mu/n J1(w_n), sum mu/n (-Y1(w_n) - 2/(pi w_n)).
    cd hankel_sum(cd z) const;
    cd j1_sum(cd z) const;
    cd y1_sum(cd z) const;

    cd r_term(cd z) const;
    cd r_star_term(cd z) const;
    cd corner_term(cd z) const;

    /// Right side of the functional equation for m(z) + conj m(conj z).
    cd fe_rhs(cd z) const;

    Formula8Parts formula8_parts(cd z) const;
    cd formula8_rhs(cd z) const { return formula8_parts(z).total(); }

    /// Im m(x) and Re m(x) on the real axis assembled from the J1 and Y1 sums.
    double real_axis_im(double x) const;
    double real_axis_re(double x) const;

    /// (1/2 pi i) times the 128-node circle integral of formula8_rhs around
    /// log n. radius <= 0 selects 0.4 times the gap to the nearest other pole
    /// (at most 0.25).
    cd residue_at_log_n(i64 n, double radius = 0.0) const;
    double default_residue_radius(i64 n) const;

private:
    struct Cache;
    enum class Kernel { plain, tan };

    QuadResult path_integral(cd z, Kernel kernel) const;
    cd g_real_tail(double v) const;
    double vertical_end(cd z, double rate, double prefactor) const;
    cd tail_series(cd z, int which) const;
    void check_pole(cd z) const;

    const LContext& ctx_;
    ContourSpec contour_;
    std::vector<ZeroRecord> zeros_;
    double c_ = 0.0;          // abscissa of the vertical line
    double m_c_ = 0.0;        // sup |G| on Re s = c
    double left_end_ = 0.0;   // sigma where the horizontal path starts
    cd l_one_;                // L(1)
    cd g_three_halves_;       // G(3/2)
    std::vector<double> s_k_, s_prime_k_;  // mu_E tail moments
    std::vector<std::size_t> support_;
    std::vector<double> mu_;
    std::vector<double> log_n_;
    std::unique_ptr<Cache> cache_;
};

}  // namespace ecmobius
