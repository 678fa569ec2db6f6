#include "ecmobius/curve.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <thread>

#include "ecmobius/errors.hpp"

namespace ecmobius {

namespace {

i64 mod(i64 x, i64 p) {
    i64 r = x % p;
    return r < 0 ? r + p : r;
}

i64 mulmod(i64 x, i64 y, i64 p) { return static_cast<i64>((static_cast<__int128>(x) * y) % p); }

i64 powmod(i64 base, i64 e, i64 p) {
    i64 r = 1 % p;
    base = mod(base, p);
    while (e > 0) {
        if (e & 1) r = mulmod(r, base, p);
        base = mulmod(base, base, p);
        e >>= 1;
    }
    return r;
}

// Legendre symbol for odd prime p via Euler's criterion.
int legendre(i64 x, i64 p) {
    x = mod(x, p);
    if (x == 0) return 0;
    return powmod(x, (p - 1) / 2, p) == 1 ? 1 : -1;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

const char* to_string(ReductionKind kind) {
    switch (kind) {
        case ReductionKind::good: return "good";
        case ReductionKind::split_multiplicative: return "split-multiplicative";
        case ReductionKind::nonsplit_multiplicative: return "nonsplit-multiplicative";
        case ReductionKind::additive: return "additive";
        case ReductionKind::user_supplied: return "user-supplied";
    }
    return "?";
}

i64 discriminant(i64 a, i64 b) {
    const __int128 A = a, B = b;
    const __int128 d = -16 * (4 * A * A * A + 27 * B * B);
    if (d == 0) fail(ErrorKind::singular, "singular curve: discriminant is zero");
    if (d > std::numeric_limits<i64>::max() || d < std::numeric_limits<i64>::min())
        fail(ErrorKind::config, "discriminant does not fit in 64 bits");
    return static_cast<i64>(d);
}

std::vector<i64> primes_upto(i64 limit) {
    std::vector<i64> out;
    if (limit < 2) return out;
    std::vector<char> composite(static_cast<std::size_t>(limit) + 1, 0);
    for (i64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (i64 j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return out;
}

std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> out;
    if (n < 0) n = -n;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

unsigned thread_count() {
    if (const char* env = std::getenv("MOBIUS_EC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const auto workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

CurveSpec make_curve(i64 a, i64 b, i64 conductor, std::optional<int> root_number,
                     std::map<i64, int> ap_overrides, std::string label) {
    CurveSpec c;
    c.a = a;
    c.b = b;
    c.discriminant = discriminant(a, b);
    if (conductor < 1) fail(ErrorKind::config, "conductor must be a positive integer");
    c.conductor = conductor;
    if (root_number && *root_number != 1 && *root_number != -1)
        fail(ErrorKind::config, "root number must be +1 or -1");
    c.root_number = root_number;
    c.label = std::move(label);
    for (i64 p : prime_factors(conductor))
        if (c.discriminant % p != 0)
            fail(ErrorKind::config, "conductor prime " + std::to_string(p) + " does not divide the discriminant");
    for (const auto& [p, v] : ap_overrides) {
        if (!is_prime(p)) fail(ErrorKind::config, "ap_override." + std::to_string(p) + ": not a prime");
        if (conductor % p == 0 && (v < -1 || v > 1))
            fail(ErrorKind::config, "ap_override." + std::to_string(p) + ": bad prime needs a_p in {-1,0,1}");
    }
    c.ap_overrides = std::move(ap_overrides);
    for (i64 p : prime_factors(c.discriminant))
        if (conductor % p != 0)
            c.warnings.push_back("prime " + std::to_string(p) +
                                 " divides the discriminant but not the conductor (non-minimal model); "
                                 "local factor follows the conductor");
    return c;
}

i64 count_points(const CurveSpec& curve, i64 p) {
    if (p < 3 || !is_prime(p)) fail(ErrorKind::domain, "count_points: need an odd prime, got " + std::to_string(p));
    if (curve.discriminant % p == 0)
        fail(ErrorKind::domain, "count_points: p = " + std::to_string(p) + " divides the discriminant");
    std::vector<char> square(static_cast<std::size_t>(p), 0);
    for (i64 y = 1; y < p; ++y) square[static_cast<std::size_t>(mulmod(y, y, p))] = 1;
    const i64 a = mod(curve.a, p), b = mod(curve.b, p);
    i64 count = 1;  // point at infinity
    for (i64 x = 0; x < p; ++x) {
        const i64 rhs = (mulmod(mulmod(x, x, p), x, p) + mulmod(a, x, p) + b) % p;
        count += rhs == 0 ? 1 : (square[static_cast<std::size_t>(rhs)] ? 2 : 0);
    }
    return count;
}

int ap_good(const CurveSpec& curve, i64 p) { return static_cast<int>(p + 1 - count_points(curve, p)); }

ReductionInfo classify_bad(const CurveSpec& curve, i64 p) {
    if (curve.discriminant % p != 0)
        fail(ErrorKind::domain, "classify_bad: p = " + std::to_string(p) + " does not divide the discriminant");
    if (auto it = curve.ap_overrides.find(p); it != curve.ap_overrides.end())
        return {p, ReductionKind::user_supplied, it->second};
    if (p == 2 || p == 3) fail(ErrorKind::config, "user override required: ap_override." + std::to_string(p));
    const i64 c4 = -48 * mod(curve.a, p);
    if (mod(c4, p) == 0) return {p, ReductionKind::additive, 0};
    const i64 minus_c6 = mulmod(864, mod(curve.b, p), p);
    return legendre(minus_c6, p) == 1 ? ReductionInfo{p, ReductionKind::split_multiplicative, 1}
                                      : ReductionInfo{p, ReductionKind::nonsplit_multiplicative, -1};
}

ReductionInfo local_data(const CurveSpec& curve, i64 p) {
    if (auto it = curve.ap_overrides.find(p); it != curve.ap_overrides.end())
        return {p, ReductionKind::user_supplied, it->second};
    if (curve.is_bad(p)) return classify_bad(curve, p);
    if (curve.discriminant % p != 0) {
        if (p == 2) fail(ErrorKind::config, "user override required: ap_override.2");
        return {p, ReductionKind::good, ap_good(curve, p)};
    }
    fail(ErrorKind::config, "user override required: ap_override." + std::to_string(p) +
                                " (prime divides the discriminant but not the conductor)");
}

std::vector<ReductionInfo> local_data_upto(const CurveSpec& curve, i64 limit) {
    const std::vector<i64> primes = primes_upto(limit);
    std::vector<ReductionInfo> out(primes.size());
    const unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max<std::size_t>(1, primes.size() / 64)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < primes.size(); ++i) out[i] = local_data(curve, primes[i]);
        return out;
    }
    // Strided assignment balances the O(p) cost; each slot is written once.
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < primes.size(); i += workers) out[i] = local_data(curve, primes[i]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace ecmobius
