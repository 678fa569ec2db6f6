#include <doctest.h>

#include <cmath>
#include <random>

#include "ecmobius/errors.hpp"
#include "ecmobius/lfunc.hpp"
#include "oracles.hpp"

using namespace ecmobius;

namespace {

const LContext& ctx32() {
    static const CurveSpec curve = make_curve(-1, 0, 32, std::nullopt, {{2, 0}});
    static const LContext c(curve, build_table(curve, 5000));
    return c;
}

const LContext& ctx37() {
    static const CurveSpec curve = make_curve(-16, 16, 37, std::nullopt, {{2, -2}, {3, -3}});
    static const LContext c(curve, build_table(curve, 5000));
    return c;
}

/// L(s) from the Euler product over p <= 20000 with a_p from brute-force counts.
cd euler_product_32a(cd s) {
    cd prod = 1.0;
    for (oracle::i64 p = 3; p <= 20000; p += 2) {
        if (!oracle::is_prime(p)) continue;
        const double ap = static_cast<double>(p + 1 - oracle::brute_count(-1, 0, p));
        const cd x = std::exp(-s * std::log(static_cast<double>(p)));
        prod /= 1.0 - ap * x + static_cast<double>(p) * x * x;
    }
    return prod;  // a_2 = 0
}

}  // namespace

TEST_CASE("L agrees with the Euler product where it converges fast") {
    for (cd s : {cd(3.0, 0.0), cd(3.0, 2.0), cd(3.5, -7.0)}) {
        const cd ref = euler_product_32a(s);
        CHECK(std::abs(ctx32().l_anywhere(s) - ref) <= 1e-6);
    }
}

TEST_CASE("known central values") {
    // L(E,1) for y^2 = x^3 - x and L'(E,1) for the rank one curve of conductor 37
    CHECK(ctx32().l_anywhere(1.0).real() == doctest::Approx(0.65551438857302995).epsilon(1e-10));
    CHECK(std::abs(ctx37().l_anywhere(1.0)) <= 1e-10);
    const cd d = (ctx37().l_anywhere(1.0 + 1e-4) - ctx37().l_anywhere(1.0 - 1e-4)) / 2e-4;
    CHECK(d.real() == doctest::Approx(0.30599977383405230).epsilon(1e-7));
}

TEST_CASE("root numbers are detected") {
    CHECK(ctx32().root_number() == 1);
    CHECK(ctx37().root_number() == -1);
    CHECK(detect_root_number(ctx32()) == 1);
}

TEST_CASE("a wrong supplied root number is overridden with a warning") {
    const CurveSpec wrong = make_curve(-1, 0, 32, -1, {{2, 0}});
    const LContext c(wrong, build_table(wrong, 2000));
    CHECK(c.root_number() == 1);
    CHECK_FALSE(c.warnings().empty());
}

TEST_CASE("corrupted coefficients make the root number ambiguous") {
    const CurveSpec curve = make_curve(-1, 0, 32, std::nullopt, {{2, 0}});
    CoefficientTable t = build_table(curve, 2000);
    for (std::size_t n : {3, 7, 11, 19}) t.a[n] += 5;
    try {
        LContext c(curve, t);
        FAIL("expected a numerical error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::numerical);
    }
}

TEST_CASE("completed function is symmetric with an asymmetric split") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(-1.0, 3.0), im(-8.0, 8.0);
    std::vector<cd> pts;
    for (int k = 0; k < 20; ++k) pts.push_back({re(rng), im(rng)});
    CHECK(lambda_symmetry_defect(ctx32(), pts) <= 1e-9);
    CHECK(lambda_symmetry_defect(ctx37(), pts) <= 1e-9);
    // the wrong sign fails visibly
    const cd s(1.3, 0.7);
    CHECK(std::abs(ctx32().lambda_with_sign(s, -1, 1.1) - ctx32().lambda_with_sign(s, 1, 1.1)) > 1e-3);
}

TEST_CASE("smoothed sum is independent of the split") {
    for (cd s : {cd(1.2, 0.3), cd(0.4, 5.0), cd(2.0, -3.0)}) {
        const cd a = ctx37().lambda_completed(s, 1.0), b = ctx37().lambda_completed(s, 1.3);
        CHECK(std::abs(a - b) <= 1e-11 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("Dirichlet series and smoothed sum agree") {
    for (cd s : {cd(4.0, 0.0), cd(4.0, 3.0), cd(7.0, -10.0)}) {
        const DirichletValue dv = ctx32().l_dirichlet(s);
        const cd ref = ctx32().lambda_completed(s) / std::exp(s * std::log(ctx32().scale()) + log_gamma(s));
        CHECK(std::abs(dv.value - ref) <= std::max(1e-12, dv.tail_bound));
    }
}

TEST_CASE("1/L(s+1/2) and the mu_E series") {
    const double c = ctx37().mu_dirichlet_abscissa();
    for (cd s : {cd(c, 0.0), cd(c, 3.0), cd(c + 1.0, -20.0)}) {
        CHECK(std::abs(ctx37().mu_dirichlet(s) * ctx37().l_anywhere(s + 0.5) - 1.0) <= 1e-13);
        CHECK(std::abs(ctx37().inverse_shifted(s) - ctx37().mu_dirichlet(s)) <= 1e-13);
    }
    CHECK(ctx37().mu_abs_sum(c) >= std::abs(ctx37().mu_dirichlet(c)));
}

TEST_CASE("L is entire: trivial zeros and conjugate symmetry") {
    for (int k = 0; k <= 3; ++k) CHECK(ctx32().l_anywhere(cd(-k)) == cd(0.0));
    for (cd s : {cd(-0.4, 2.0), cd(0.5, 6.0), cd(-2.3, -1.0)})
        CHECK(std::abs(ctx32().l_anywhere(std::conj(s)) - std::conj(ctx32().l_anywhere(s))) <= 1e-12 * (1.0 + std::abs(ctx32().l_anywhere(s))));
}

TEST_CASE("L' by finite differences matches the Taylor extraction") {
    const auto f = ctx32().shifted();
    const auto c = taylor_at(f, 0.3, 3, 0.25);
    const double h = 1e-5;
    const cd fd = (f(0.3 + h) - f(0.3 - h)) / (2.0 * h);
    CHECK(std::abs(c[0] - f(0.3)) <= 1e-12);
    CHECK(std::abs(c[1] - fd) <= 1e-8);
}

TEST_CASE("Taylor coefficients of exp") {
    const auto c = taylor_at([](cd s) { return std::exp(s); }, 0.0, 6, 0.5, 64);
    double fact = 1.0;
    for (int j = 0; j < 6; ++j) {
        if (j > 0) fact *= j;
        CHECK(std::abs(c[static_cast<std::size_t>(j)] - 1.0 / fact) <= 1e-14);
    }
}

TEST_CASE("rectangle zero count") {
    const auto poly = [](cd s) { return (s - 0.3) * (s - cd(0.2, 0.5)) * (s - 2.0) * (s - cd(0.7, -0.95)); };
    CHECK(rectangle_zero_count(poly, 0.0, 1.0, -1.0, 1.0) == 3);
    CHECK(rectangle_zero_count(poly, 0.0, 1.0, 0.2, 1.0) == 1);
    CHECK(rectangle_zero_count(ctx37().shifted(), -0.25, 1.5, -1.0, 1.0) == 1);
    CHECK(rectangle_zero_count(ctx32().shifted(), -0.25, 1.5, -1.0, 1.0) == 0);
}

TEST_CASE("real zero search") {
    CHECK(find_real_zeros(ctx32().shifted()).empty());
    const auto z37 = find_real_zeros(ctx37().shifted());
    REQUIRE(z37.size() == 1);
    CHECK(z37[0].beta == 0.5);
    CHECK(z37[0].order == 1);
    CHECK(z37[0].taylor[1].real() == doctest::Approx(0.30599977383405230).epsilon(1e-9));

    // 1 - 2^{1-w} has a simple zero at w = 1 with derivative log 2
    const DirichletPolynomial simple{{{1, 1.0}, {2, -2.0}}};
    const auto zs = find_real_zeros(simple.shifted());
    REQUIRE(zs.size() == 1);
    CHECK(zs[0].order == 1);
    CHECK(std::abs(zs[0].taylor[1] - std::log(2.0)) <= 1e-10);

    // its square has a double zero with second coefficient (log 2)^2
    const DirichletPolynomial dbl{{{1, 1.0}, {2, -4.0}, {4, 4.0}}};
    const auto zd = find_real_zeros(dbl.shifted());
    REQUIRE(zd.size() == 1);
    CHECK(zd[0].order == 2);
    CHECK(std::abs(zd[0].taylor[2] - std::pow(std::log(2.0), 2)) <= 1e-9);

    // 1 - 2^{0.8-w} vanishes at w = 0.8, i.e. s = 0.3
    const DirichletPolynomial off{{{1, 1.0}, {2, -std::pow(2.0, 0.8)}}};
    const auto zo = find_real_zeros(off.shifted());
    REQUIRE(zo.size() == 1);
    CHECK(zo[0].beta == doctest::Approx(0.3).epsilon(1e-11));
}
