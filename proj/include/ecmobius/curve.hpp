#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ecmobius {

using i64 = std::int64_t;

/// Short Weierstrass model y^2 = x^3 + a x + b over Q with integer
/// coefficients, together with the arithmetic data the L-function needs.
///
/// The conductor is trusted: only its prime support is validated against the
/// discriminant. Local factors at 2 and 3 that cannot be read off the short
/// model are supplied through `ap_overrides`.
struct CurveSpec {
    i64 a = 0;
    i64 b = 0;
    i64 discriminant = 0;
    i64 conductor = 1;
    std::optional<int> root_number;  // +1 / -1, or empty when undetermined
    std::string label;
    std::map<i64, int> ap_overrides;
    std::vector<std::string> warnings;

    bool is_bad(i64 p) const { return conductor % p == 0; }
};

enum class ReductionKind { good, split_multiplicative, nonsplit_multiplicative, additive, user_supplied };

const char* to_string(ReductionKind kind);

struct ReductionInfo {
    i64 prime = 0;
    ReductionKind kind = ReductionKind::good;
    int ap = 0;
};

/// -16 (4 a^3 + 27 b^2). Throws ErrorKind::singular when zero and
/// ErrorKind::config when the value does not fit in 64 bits.
i64 discriminant(i64 a, i64 b);

/// Validating constructor. Checks nonsingularity, that every prime of the
/// conductor divides the discriminant, the root-number range, and that every
/// override names a prime. Primes dividing the discriminant but not the
/// conductor (non-minimal model) are recorded in `warnings`.
CurveSpec make_curve(i64 a, i64 b, i64 conductor, std::optional<int> root_number = std::nullopt,
                     std::map<i64, int> ap_overrides = {}, std::string label = {});

/// Number of projective points over F_p, point at infinity included.
/// Requires p odd and p not dividing the discriminant.
i64 count_points(const CurveSpec& curve, i64 p);

/// p + 1 - #E(F_p) for a prime of good reduction of the model.
int ap_good(const CurveSpec& curve, i64 p);

/// Reduction type at a prime dividing the discriminant. For p in {2,3} the
/// short model is not reliable and an override must be present.
ReductionInfo classify_bad(const CurveSpec& curve, i64 p);

/// a_p for any prime, dispatching on overrides, conductor and discriminant.
ReductionInfo local_data(const CurveSpec& curve, i64 p);

/// a_p for every prime p <= limit, in increasing order of p. Work is split
/// across threads (see thread_count()) and merged in prime order.
std::vector<ReductionInfo> local_data_upto(const CurveSpec& curve, i64 limit);

/// Primes up to `limit` (inclusive), by a plain sieve.
std::vector<i64> primes_upto(i64 limit);

/// Prime factors of n (without multiplicity), by trial division.
std::vector<i64> prime_factors(i64 n);

/// Worker count: MOBIUS_EC_THREADS if set and positive, else hardware
/// concurrency (at least 1).
unsigned thread_count();

/// Runs body(0..count-1) on up to thread_count() workers (strided). The first
/// exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ecmobius
