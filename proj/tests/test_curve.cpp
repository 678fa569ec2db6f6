#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "ecmobius/curve.hpp"
#include "ecmobius/errors.hpp"
#include "oracles.hpp"

using namespace ecmobius;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::io;
}

}  // namespace

TEST_CASE("discriminant of the short model") {
    CHECK(discriminant(-1, 0) == 64);
    CHECK(discriminant(-16, 16) == -16 * (4 * -4096 + 27 * 256));
    CHECK(kind_of([] { discriminant(0, 0); }) == ErrorKind::singular);
    CHECK(kind_of([] { discriminant(-3, 2); }) == ErrorKind::singular);
    CHECK(kind_of([] { discriminant(4000000000LL, 1); }) == ErrorKind::config);
}

TEST_CASE("make_curve validation") {
    const CurveSpec c = make_curve(-1, 0, 32, std::nullopt, {{2, 0}});
    CHECK(c.discriminant == 64);
    CHECK_FALSE(c.root_number.has_value());
    CHECK(kind_of([] { make_curve(-1, 0, 96); }) == ErrorKind::config);       // 3 does not divide 64
    CHECK(kind_of([] { make_curve(-1, 0, 32, 2); }) == ErrorKind::config);    // root number out of range
    CHECK(kind_of([] { make_curve(-1, 0, 32, 1, {{4, 0}}); }) == ErrorKind::config);  // override at a non-prime
    CHECK(kind_of([] { make_curve(0, 0, 1); }) == ErrorKind::singular);
}

TEST_CASE("non-minimal model is flagged") {
    // y^2 = x^3 - 81 x is y^2 = x^3 - x rescaled by 3; 3 divides the
    // discriminant but not the conductor.
    const CurveSpec c = make_curve(-81, 0, 32);
    CHECK_FALSE(c.warnings.empty());
}

TEST_CASE("point counts match brute force") {
    const CurveSpec e32 = make_curve(-1, 0, 32, std::nullopt, {{2, 0}});
    const CurveSpec e37 = make_curve(-16, 16, 37, std::nullopt, {{2, -2}, {3, -3}});
    for (i64 p = 5; p < 400; ++p) {
        if (!oracle::is_prime(p)) continue;
        CHECK(count_points(e32, p) == oracle::brute_count(-1, 0, p));
        if (p != 37) CHECK(count_points(e37, p) == oracle::brute_count(-16, 16, p));
    }
}

TEST_CASE("local data against brute force, good and bad primes") {
    const CurveSpec e37 = make_curve(-16, 16, 37, std::nullopt, {{2, -2}, {3, -3}});
    const auto data = local_data_upto(e37, 600);
    const auto primes = primes_upto(600);
    REQUIRE(data.size() == primes.size());
    for (std::size_t k = 0; k < data.size(); ++k) {
        const i64 p = primes[k];
        CHECK(data[k].prime == p);
        if (p == 2) CHECK(data[k].ap == -2);
        else if (p == 3) CHECK(data[k].ap == -3);
        else CHECK(data[k].ap == p + 1 - oracle::brute_count(-16, 16, p));
    }
    const ReductionInfo bad = classify_bad(e37, 37);
    CHECK((bad.kind == ReductionKind::split_multiplicative || bad.kind == ReductionKind::nonsplit_multiplicative));
    CHECK(bad.ap == 37 + 1 - oracle::brute_count(-16, 16, 37));
}

TEST_CASE("Hasse bound holds for small primes") {
    const CurveSpec e32 = make_curve(-1, 0, 32, std::nullopt, {{2, 0}});
    for (i64 p : primes_upto(3000)) {
        if (p == 2) continue;
        const int ap = ap_good(e32, p);
        CHECK(static_cast<double>(ap) * ap <= 4.0 * static_cast<double>(p));
    }
}

TEST_CASE("primes and factorisation") {
    CHECK(primes_upto(30) == std::vector<i64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(prime_factors(360) == std::vector<i64>{2, 3, 5});
    CHECK(prime_factors(97) == std::vector<i64>{97});
    CHECK(prime_factors(1).empty());
}

TEST_CASE("thread count follows the environment") {
    ::setenv("MOBIUS_EC_THREADS", "3", 1);
    CHECK(thread_count() == 3);
    ::setenv("MOBIUS_EC_THREADS", "1", 1);
    CHECK(thread_count() == 1);
    ::unsetenv("MOBIUS_EC_THREADS");
    CHECK(thread_count() >= 1);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
    ::setenv("MOBIUS_EC_THREADS", "4", 1);
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t k) { hits[k]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t k) {
                        if (k == 7) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
    ::unsetenv("MOBIUS_EC_THREADS");
}

TEST_CASE("local data are independent of the thread count") {
    const CurveSpec e32 = make_curve(-1, 0, 32, std::nullopt, {{2, 0}});
    ::setenv("MOBIUS_EC_THREADS", "1", 1);
    const auto one = local_data_upto(e32, 20000);
    ::setenv("MOBIUS_EC_THREADS", "4", 1);
    const auto four = local_data_upto(e32, 20000);
    ::unsetenv("MOBIUS_EC_THREADS");
    REQUIRE(one.size() == four.size());
    for (std::size_t k = 0; k < one.size(); ++k) CHECK(one[k].ap == four[k].ap);
}
