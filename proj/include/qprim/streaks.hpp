#pragma once

// Primitive-root streaks along prime values of a polynomial: c_g(f), prime
// counts pi_f(x), and residual-index statistics.

#include "qprim/arith.hpp"
#include "qprim/int128.hpp"
#include "qprim/poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <unordered_set>
#include <vector>

namespace qprim::streaks {

struct StreakResult {
    poly::PolyZ poly;
    i128 g = 0;
    std::uint64_t count = 0;  // c_g(f), or a lower bound when no failure was found
    std::optional<i64> n_at_failure;
    std::optional<u128> failing_prime;
    std::optional<u128> residual_index_at_failure;
    std::uint64_t n_scanned = 0;
    std::uint64_t primes_seen = 0;  // distinct prime values examined

    bool complete() const { return failing_prime.has_value(); }
};

struct PrStats {
    std::uint64_t primes_total = 0;
    std::uint64_t primes_with_g_pr = 0;
    std::map<u128, std::uint64_t> histogram;  // residual index -> count
    i64 n_cap = 0;
};

/// One prime value p = f(n), first occurrence flagged, with the distinct
/// primes of p - 1 cached for primitive-root tests.
struct PrimeValue {
    i64 n = 0;
    u128 p = 0;
    bool repeat = false;  // p already appeared at a smaller n
    arith::GroupOrderPrimes order_primes;
};

/// Lazily grown, shareable list of the prime values f(0), f(1), ... in order
/// of n. Safe for concurrent readers; growth is serialized internally.
class PrimeValueTable {
public:
    explicit PrimeValueTable(poly::PolyZ f);

    const poly::PolyZ& poly() const { return f_; }

    /// Entry i among prime values with n <= n_cap; false when there is none.
    bool get(std::size_t i, i64 n_cap, PrimeValue& out);

    /// Number of n values examined so far.
    i64 scanned() const;

private:
    struct Entry {
        i64 n;
        u128 p;
        std::uint32_t pool_offset;
        std::uint8_t pool_count;
        bool repeat;
    };

    void extend(std::size_t want, i64 n_cap);

    poly::PolyZ f_;
    std::vector<Entry> entries_;
    std::vector<u64> pool_;
    struct Hash {
        std::size_t operator()(u128 x) const noexcept
        {
            return std::hash<u64>{}(static_cast<u64>(x) ^ static_cast<u64>(x >> 64) * 0x9e3779b97f4a7c15ULL);
        }
    };
    std::unordered_set<u128, Hash> seen_;
    i64 next_n_ = 0;
    mutable std::shared_mutex mu_;
};

/// c_g(f) scanning n = 0, 1, ..., n_cap. Composite values, values below 2,
/// primes dividing g and repeated primes are skipped. With prime_limit > 0 the
/// scan also stops after that many successes (prefix verification).
StreakResult streak(const poly::PolyZ& f, i128 g, i64 n_cap, std::uint64_t prime_limit = 0);
StreakResult streak(PrimeValueTable& table, i128 g, i64 n_cap, std::uint64_t prime_limit = 0);

/// #{0 <= n <= x : f(n) prime}; counts n, not distinct primes.
std::uint64_t pi_f(const poly::PolyZ& f, i64 x, unsigned workers = 1);

/// #{lo <= n <= hi : f(n) prime}.
std::uint64_t count_prime_values(const poly::PolyZ& f, i64 lo, i64 hi, unsigned workers = 1);

/// Residual-index histogram over distinct primes f(n), 0 <= n <= n_cap, not dividing g.
PrStats pr_fraction(const poly::PolyZ& f, i128 g, i64 n_cap, unsigned workers = 1);

struct MaxStreak {
    i64 k_best = 0;
    std::uint64_t c_best = 0;
    bool lower_bound = false;  // the best streak did not fail within n_cap
};

/// max over 1 <= k <= k_max of c_{k^2 g_base}(f), ties to the smallest k.
MaxStreak empirical_max_streak(i128 g_base, const poly::PolyZ& f, i64 k_max, i64 n_cap,
                               unsigned workers = 1);

/// Throws invalid-base unless g is outside {-1} and the perfect squares.
void require_base(i128 g);

} // namespace qprim::streaks
