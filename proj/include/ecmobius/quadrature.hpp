#pragma once

#include <functional>

#include "ecmobius/special.hpp"

namespace ecmobius {

struct QuadResult {
    cd value = 0.0;
    double error = 0.0;  // Kronrod-Gauss difference summed over panels
    int evaluations = 0;
    int panels = 0;
    double l1 = 0.0;     // estimate of the integral of |f|
};

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-13;
    /// Also accept an error below l1_rel_tol * integral of |f| (for integrands
    /// with heavy cancellation).
    double l1_rel_tol = 0.0;
    int max_panels = 4000;
    int initial_panels = 1;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [lo, hi] for a complex
/// valued integrand of a real variable. The panel with the largest error
/// estimate is bisected until the summed estimate is below
/// max(abs_tol, rel_tol * |I|). Panel order (and hence the result) is
/// deterministic. Throws ErrorKind::numerical when max_panels is exhausted.
QuadResult integrate(const std::function<cd(double)>& f, double lo, double hi, const QuadOptions& opt = {});

/// Integral of f(s) ds along the straight segment from a to b.
QuadResult integrate_segment(const std::function<cd(cd)>& f, cd a, cd b, const QuadOptions& opt = {});

/// (1/2 pi i) times the closed-circle integral of f around `center`, by the
/// n-node trapezoid rule (exponentially accurate for analytic integrands).
cd circle_mean_integral(const std::function<cd(cd)>& f, cd center, double radius, int nodes);

}  // namespace ecmobius
