#include "qprim/streaks.hpp"

#include "qprim/charsums.hpp"
#include "qprim/error.hpp"
#include "qprim/parallel.hpp"

#include <algorithm>
#include <mutex>
#include <utility>

namespace qprim::streaks {

namespace {

// f(n) when it is a prime, otherwise 0.
u128 prime_value(const poly::PolyZ& f, i64 n)
{
    const i128 v = poly::eval(f, n);
    if (v < 2)
        return 0;
    if (fits_u64(v))
        return arith::is_prime(static_cast<u64>(v)) ? static_cast<u128>(v) : 0;
    return arith::is_prime_u128(static_cast<u128>(v)) ? static_cast<u128>(v) : 0;
}

constexpr std::size_t kGrowthChunk = 256;

} // namespace

void require_base(i128 g)
{
    if (!charsums::in_base_set(g))
        throw Error(ErrorKind::invalid_base, "g=" + to_string(g) + " is -1 or a perfect square");
}

PrimeValueTable::PrimeValueTable(poly::PolyZ f) : f_(std::move(f)) {}

i64 PrimeValueTable::scanned() const
{
    std::shared_lock lock(mu_);
    return next_n_;
}

bool PrimeValueTable::get(std::size_t i, i64 n_cap, PrimeValue& out)
{
    {
        std::shared_lock lock(mu_);
        if (i >= entries_.size() && next_n_ > n_cap)
            return false;
        if (i < entries_.size()) {
            const Entry& e = entries_[i];
            if (e.n > n_cap)
                return false;
            out.n = e.n;
            out.p = e.p;
            out.repeat = e.repeat;
            out.order_primes.count = e.pool_count;
            std::copy_n(pool_.begin() + e.pool_offset, e.pool_count, out.order_primes.primes.begin());
            return true;
        }
    }
    {
        std::unique_lock lock(mu_);
        extend(i + kGrowthChunk, n_cap);
    }
    return get(i, n_cap, out);
}

void PrimeValueTable::extend(std::size_t want, i64 n_cap)
{
    while (entries_.size() < want && next_n_ <= n_cap) {
        const i64 n = next_n_++;
        const u128 p = prime_value(f_, n);
        if (p == 0)
            continue;
        Entry e{n, p, static_cast<std::uint32_t>(pool_.size()), 0, false};
        if (!seen_.insert(p).second) {
            e.repeat = true;
        } else {
            const auto gp = arith::group_order_primes_wide(p);
            pool_.insert(pool_.end(), gp.primes.begin(), gp.primes.begin() + gp.count);
            e.pool_count = static_cast<std::uint8_t>(gp.count);
        }
        entries_.push_back(e);
    }
}

StreakResult streak(const poly::PolyZ& f, i128 g, i64 n_cap, std::uint64_t prime_limit)
{
    PrimeValueTable table(f);
    return streak(table, g, n_cap, prime_limit);
}

StreakResult streak(PrimeValueTable& table, i128 g, i64 n_cap, std::uint64_t prime_limit)
{
    require_base(g);
    if (n_cap < 0)
        throw Error(ErrorKind::invalid_input, "n_cap must be nonnegative");

    StreakResult r;
    r.poly = table.poly();
    r.g = g;
    r.n_scanned = static_cast<std::uint64_t>(n_cap) + 1;

    PrimeValue pv;
    for (std::size_t i = 0; table.get(i, n_cap, pv); ++i) {
        if (pv.repeat)
            continue;
        ++r.primes_seen;
        const u128 gm = arith::reduce_mod_wide(g, pv.p);
        if (gm == 0)
            continue;
        if (arith::is_primitive_root_wide(gm, pv.p, pv.order_primes.view())) {
            ++r.count;
            if (prime_limit != 0 && r.count >= prime_limit) {
                r.n_scanned = static_cast<std::uint64_t>(pv.n) + 1;
                return r;
            }
            continue;
        }
        r.n_at_failure = pv.n;
        r.failing_prime = pv.p;
        r.residual_index_at_failure = arith::residual_index_wide(g, pv.p);
        r.n_scanned = static_cast<std::uint64_t>(pv.n) + 1;
        return r;
    }
    return r;
}

std::uint64_t pi_f(const poly::PolyZ& f, i64 x, unsigned workers)
{
    if (x < 0)
        throw Error(ErrorKind::invalid_input, "x must be nonnegative");
    return count_prime_values(f, 0, x, workers);
}

std::uint64_t count_prime_values(const poly::PolyZ& f, i64 lo, i64 hi, unsigned workers)
{
    if (hi < lo)
        return 0;
    const std::uint64_t total = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t chunk = 1 << 14;
    const std::uint64_t chunks = (total + chunk - 1) / chunk;
    std::vector<std::uint64_t> counts(chunks, 0);
    parallel_for(chunks, workers, [&](std::uint64_t c) {
        const i64 a = lo + static_cast<i64>(c * chunk);
        const i64 b = std::min<i64>(hi, a + static_cast<i64>(chunk) - 1);
        std::uint64_t k = 0;
        for (i64 n = a; n <= b; ++n)
            k += prime_value(f, n) != 0;
        counts[c] = k;
    });
    std::uint64_t sum = 0;
    for (auto k : counts)
        sum += k;
    return sum;
}

PrStats pr_fraction(const poly::PolyZ& f, i128 g, i64 n_cap, unsigned workers)
{
    require_base(g);
    if (n_cap < 0)
        throw Error(ErrorKind::invalid_input, "n_cap must be nonnegative");
    const std::uint64_t total = static_cast<std::uint64_t>(n_cap) + 1;
    const std::uint64_t chunk = 1 << 14;
    const std::uint64_t chunks = (total + chunk - 1) / chunk;
    std::vector<std::vector<std::pair<u128, u128>>> found(chunks);
    parallel_for(chunks, workers, [&](std::uint64_t c) {
        const i64 lo = static_cast<i64>(c * chunk);
        const i64 hi = std::min<i64>(n_cap, lo + static_cast<i64>(chunk) - 1);
        auto& out = found[c];
        for (i64 n = lo; n <= hi; ++n) {
            const u128 p = prime_value(f, n);
            if (p == 0 || arith::reduce_mod_wide(g, p) == 0)
                continue;
            out.emplace_back(p, arith::residual_index_wide(g, p));
        }
    });
    std::vector<std::pair<u128, u128>> all;
    for (auto& v : found)
        all.insert(all.end(), v.begin(), v.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    PrStats s;
    s.n_cap = n_cap;
    for (const auto& [p, r] : all) {
        ++s.primes_total;
        ++s.histogram[r];
    }
    if (auto it = s.histogram.find(1); it != s.histogram.end())
        s.primes_with_g_pr = it->second;
    return s;
}

MaxStreak empirical_max_streak(i128 g_base, const poly::PolyZ& f, i64 k_max, i64 n_cap,
                               unsigned workers)
{
    require_base(g_base);
    if (k_max < 1)
        throw Error(ErrorKind::invalid_input, "k_max must be at least 1");
    PrimeValueTable table(f);
    std::vector<StreakResult> results(static_cast<std::size_t>(k_max));
    parallel_for(static_cast<std::uint64_t>(k_max), workers, [&](std::uint64_t i) {
        const i128 k = static_cast<i128>(i) + 1;
        results[i] = streak(table, checked_mul(k * k, g_base), n_cap);
    });
    MaxStreak best;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (best.k_best == 0 || results[i].count > best.c_best) {
            best.k_best = static_cast<i64>(i) + 1;
            best.c_best = results[i].count;
            best.lower_bound = !results[i].complete();
        }
    }
    return best;
}

} // namespace qprim::streaks
