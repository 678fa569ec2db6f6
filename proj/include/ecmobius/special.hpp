#pragma once

#include <complex>

namespace ecmobius {

using cd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double euler_gamma = 0.57721566490153286061;

/// Radius at which the Bessel routines switch from the ascending series to
/// the Hankel asymptotic expansion.
inline constexpr double bessel_switch_radius = 12.0;

// Bessel functions of integer order 0 and 1 on the principal branch
// (arg w in (-pi, pi]; the negative real axis is taken from above).
// All throw ErrorKind::domain when |Im w| would overflow e^{|Im w|}.
cd bessel_j0(cd w);
cd bessel_j1(cd w);
cd bessel_y0(cd w);  // throws ErrorKind::domain at w = 0
cd bessel_y1(cd w);  // throws ErrorKind::domain at w = 0

/// Y_1(w) + 2/(pi w). For |w| <= 1 the 1/w Laurent term is removed from the
/// ascending series symbolically; the result is O(w log w) at the origin.
cd bessel_y1_regular_part(cd w);

/// H_1^{(2)}(w) = J_1(w) - i Y_1(w).
cd hankel2_1(cd w);

/// H_1^{(2)}(w) - 2i/(pi w), computed without cancellation near w = 0.
cd hankel2_1_regularized(cd w);

/// Principal log Gamma (analytic continuation from the positive axis, cut
/// along the negative real axis). Throws ErrorKind::domain at the poles.
cd log_gamma(cd s);

/// Upper incomplete gamma Gamma(s, x) for complex s and real x > 0.
/// Continued fraction when x is large compared to |s| (or s sits in the left
/// half-plane where the series cancels), otherwise Gamma(s) - gamma(s, x).
cd upper_incomplete_gamma(cd s, double x);

/// tan(pi s) - i in the form -2i q/(1+q), q = e^{2 pi i s}, which decays like
/// 2 e^{-2 pi Im s} in the upper half-plane. Throws ErrorKind::domain at
/// the real poles s = k + 1/2.
cd tan_pi_minus_i(cd s);

/// tan(pi s), via tan_pi_minus_i.
inline cd tan_pi(cd s) { return tan_pi_minus_i(s) + cd(0.0, 1.0); }

/// psi(n) for positive integer n: -gamma + H_{n-1}.
double digamma_int(int n);

}  // namespace ecmobius
