#include <doctest.h>

#include <cmath>

#include "ecmobius/errors.hpp"
#include "ecmobius/explicit.hpp"
#include "oracles.hpp"

using namespace ecmobius;

namespace {

const cd I(0.0, 1.0);

const CurveSpec& curve32() {
    static const CurveSpec c = make_curve(-1, 0, 32, std::nullopt, {{2, 0}});
    return c;
}

const LContext& ctx32() {
    static const LContext c(curve32(), build_table(curve32(), 5000));
    return c;
}

const Evaluator& ev32() {
    static const Evaluator e(ctx32());
    return e;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::io;
}

/// Residue sums of e^{sz}/f and tan(pi s) e^{sz}/f from circles around the
/// listed zeros (and s = 1/2 for the tan kernel).
std::pair<cd, cd> circle_residues(const ShiftedL& f, const std::vector<double>& betas, cd z) {
    cd r = 0.0, rs = 0.0;
    bool central = false;
    for (double b : betas) {
        central = central || b == 0.5;
        r += oracle::circle_residue([&](cd s) { return std::exp(s * z) / f(s); }, b, 0.04);
        rs += oracle::circle_residue([&](cd s) { return std::tan(oracle::pi * s) * std::exp(s * z) / f(s); }, b, 0.04);
    }
    if (!central) rs += oracle::circle_residue([&](cd s) { return std::tan(oracle::pi * s) * std::exp(s * z) / f(s); }, 0.5, 0.04);
    return {r, rs};
}

}  // namespace

TEST_CASE("residue terms against circle quadrature") {
    const std::vector<DirichletPolynomial> polys = {
        {{{1, 1.0}, {2, -2.0}}},                      // simple zero at s = 1/2
        {{{1, 1.0}, {2, -4.0}, {4, 4.0}}},            // double zero at s = 1/2
        {{{1, 1.0}, {2, -std::pow(2.0, 0.8)}}},       // simple zero at s = 0.3
        {{{1, 1.0}, {2, -(2.0 + std::pow(2.0, 0.8))}, {4, std::pow(2.0, 1.8)}}},  // (1 - 2^{1-w})(1 - 2^{0.8-w})
    };
    for (const auto& poly : polys) {
        const ShiftedL f = poly.shifted();
        const auto zeros = find_real_zeros(f);
        REQUIRE_FALSE(zeros.empty());
        std::vector<double> betas;
        for (const auto& zr : zeros) betas.push_back(zr.beta);
        for (cd z : {cd(0.3, 0.4), cd(-1.0, 2.0), cd(1.5, -0.7), cd(2.0, 0.0)}) {
            const auto [r, rs] = circle_residues(f, betas, z);
            CHECK(std::abs(r_term(zeros, z) - r) <= 1e-7);
            CHECK(std::abs(r_star_term(zeros, f(0.5), z) - rs) <= 1e-7);
        }
    }
}

TEST_CASE("R* without a central zero is the tan residue at 1/2") {
    const cd z(0.7, 1.1), l1 = ctx32().l_anywhere(1.0);
    CHECK(std::abs(r_star_term({}, l1, z) + std::exp(0.5 * z) / (oracle::pi * l1)) <= 1e-15);
    CHECK(ev32().zeros().empty());
    CHECK(ev32().r_term(z) == cd(0.0));
}

TEST_CASE("Mellin residue sums") {
    for (double X : {0.05, 0.25, 1.0}) {
        CHECK(mellin_j1_check(X) <= 1e-10);
        CHECK(mellin_y1_check(X) <= 1e-8);
        CHECK(std::abs(bessel_j1(2.0 / std::sqrt(X)) + I * mellin_y1_sum(X) - hankel2_1_regularized(2.0 / std::sqrt(X))) <= 1e-8);
    }
    // truncation error decreases with K
    CHECK(mellin_j1_check(1.0, 3) > mellin_j1_check(1.0, 6));
    CHECK(kind_of([] { mellin_j1_check(-1.0); }) == ErrorKind::domain);
}

TEST_CASE("G is 1/L(s + 1/2)") {
    for (cd s : {cd(1.0, 1.0), cd(0.2, 3.0), cd(6.0, 0.0)})
        CHECK(std::abs(ev32().g(s) * ctx32().l_anywhere(s + 0.5) - 1.0) <= 1e-12);
}

TEST_CASE("m0 partial sums converge within their tail bound") {
    for (cd z : {cd(0.3, 0.5), cd(-2.0, 1.0), cd(1.2, 0.0)}) {
        const SeriesValue a = ev32().m0_partial(z, 1000), b = ev32().m0_partial(z, 2000), full = ev32().m0_partial(z, 5000);
        CHECK(std::abs(a.value - b.value) <= a.tail_bound);
        CHECK(std::abs(ev32().m0_series(z) - full.value) <= full.tail_bound);
        CHECK(std::abs(ev32().m0_series(z) - a.value) <= a.tail_bound);
    }
    CHECK(kind_of([] { ev32().m0_series(cd(8.0, 0.5)); }) == ErrorKind::domain);
}

TEST_CASE("direct evaluation rejects the lower half plane and pole neighbourhoods") {
    CHECK(kind_of([] { ev32().m_direct(cd(0.5, -0.1)); }) == ErrorKind::domain);
    CHECK(kind_of([] { ev32().m_direct(cd(0.5, 0.0)); }) == ErrorKind::domain);
    CHECK(kind_of([] { ev32().formula8_rhs(cd(std::log(5.0), 1e-9)); }) == ErrorKind::domain);
    CHECK(kind_of([] { ev32().formula8_rhs(cd(0.5, 6.0)); }) == ErrorKind::domain);
    CHECK(ev32().pole_distance(cd(std::log(5.0), 0.25)) == doctest::Approx(0.25));
}

TEST_CASE("explicit formula agrees with direct integration") {
    for (cd z : {cd(-0.5, 0.8), cd(0.9, 1.7), cd(1.6, 2.9)}) {
        const cd m = ev32().m_direct(z);
        CHECK(std::abs(m - ev32().formula8_rhs(z)) <= 1e-6 * (1.0 + std::abs(m)));
    }
}

TEST_CASE("functional equation for m(z) + conj m(conj z)") {
    for (cd z : {cd(1.0, 0.6), cd(-0.3, 3.5)}) {
        const cd lhs = ev32().m_direct(z) + std::conj(ev32().formula8_rhs(std::conj(z)));
        CHECK(std::abs(lhs - ev32().fe_rhs(z)) <= 1e-6);
    }
}

TEST_CASE("real-axis recombination") {
    for (double x : {0.3, 2.5}) {
        const cd f = ev32().formula8_rhs(x);
        CHECK(std::abs(f.imag() - ev32().real_axis_im(x)) <= 1e-7);
        CHECK(std::abs(f.real() - ev32().real_axis_re(x)) <= 1e-7);
    }
}

TEST_CASE("formula is continuous across the real axis away from poles") {
    const double x = 0.9;
    const cd above = ev32().formula8_rhs(cd(x, 1e-7)), below = ev32().formula8_rhs(cd(x, -1e-7)), on = ev32().formula8_rhs(x);
    CHECK(std::abs(above - on) <= 1e-5);
    CHECK(std::abs(below - on) <= 1e-5);
}

TEST_CASE("residues at log n are -mu_E(n) / (2 pi i) exactly") {
    const auto& t = ctx32().table();
    for (i64 n : {1, 2, 5, 9, 13}) {
        const cd expect = t.mu[static_cast<std::size_t>(n)].is_zero() ? cd(0.0) : -t.mu_value(n) / (2.0 * oracle::pi * I);
        CHECK(std::abs(ev32().residue_at_log_n(n) - expect) <= 1e-8);
    }
    // an oracle circle of a different radius gives the same value
    const double r = 0.5 * ev32().default_residue_radius(5);
    const cd res = oracle::circle_residue([](cd z) { return ev32().formula8_rhs(z); }, std::log(5.0), r, 96);
    CHECK(std::abs(res + t.mu_value(5) / (2.0 * oracle::pi * I)) <= 1e-8);
    CHECK(kind_of([] { ev32().residue_at_log_n(5, 0.9); }) == ErrorKind::domain);
}

TEST_CASE("halving the panel tolerance moves values by less than the tolerance") {
    ContourSpec tight;
    tight.panel_tolerance = 5e-11;
    const Evaluator ev(ctx32(), tight);
    for (cd z : {cd(0.2, 0.7), cd(1.4, 2.2)}) {
        CHECK(std::abs(ev.m_direct(z) - ev32().m_direct(z)) <= 1e-9);
        CHECK(std::abs(ev.formula8_rhs(z) - ev32().formula8_rhs(z)) <= 1e-9);
    }
}

TEST_CASE("contour validation") {
    ContourSpec bad;
    bad.detour_height = 2.5;
    CHECK(kind_of([&] { Evaluator ev(ctx32(), bad); }) == ErrorKind::config);
}
