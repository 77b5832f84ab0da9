#pragma once

// Slow, obviously-correct reference implementations used to cross-check the
// library. Nothing here calls into qprim.

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline std::vector<u64> sieve(u64 limit)
{
    std::vector<bool> comp(limit + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i) {
        if (comp[i])
            continue;
        out.push_back(i);
        for (u64 j = i * i; j <= limit; j += i)
            comp[j] = true;
    }
    return out;
}

inline std::map<u64, int> factor(u64 n)
{
    std::map<u64, int> f;
    for (u64 d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            ++f[d];
            n /= d;
        }
    if (n > 1)
        ++f[n];
    return f;
}

inline u64 mod(i128 a, u64 m)
{
    i128 r = a % static_cast<i128>(m);
    return static_cast<u64>(r < 0 ? r + m : r);
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 b, u64 e, u64 m)
{
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

/// Order by stepping through powers (small p only).
inline u64 order(i128 g, u64 p)
{
    const u64 gm = mod(g, p);
    u64 x = gm;
    for (u64 k = 1; k < p; ++k) {
        if (x == 1)
            return k;
        x = mulmod(x, gm, p);
    }
    return 0;
}

/// Order via the divisors of p - 1 (trial-division factorization).
inline u64 order_by_divisors(i128 g, u64 p)
{
    const u64 gm = mod(g, p);
    u64 ord = p - 1;
    for (const auto& [q, e] : factor(p - 1)) {
        (void)e;
        while (ord % q == 0 && powmod(gm, ord / q, p) == 1)
            ord /= q;
    }
    return ord;
}

/// Legendre symbol by counting square roots.
inline int legendre_by_squares(i128 a, u64 p)
{
    const u64 am = mod(a, p);
    if (am == 0)
        return 0;
    for (u64 x = 1; x < p; ++x)
        if (mulmod(x, x, p) == am)
            return 1;
    return -1;
}

/// Legendre symbol by Euler's criterion.
inline int legendre_euler(i128 a, u64 p)
{
    const u64 am = mod(a, p);
    if (am == 0)
        return 0;
    return powmod(am, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Kronecker symbol as the completely multiplicative extension over the
/// factorization of n, with the standard (a/2) and (a/-1) rules.
inline int kronecker(i128 a, i64 n)
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int r = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            r = -r;
    }
    for (const auto& [q, e] : factor(static_cast<u64>(n))) {
        int s;
        if (q == 2) {
            const u64 a8 = mod(a, 8);
            s = (a8 % 2 == 0) ? 0 : (a8 == 1 || a8 == 7) ? 1 : -1;
        } else {
            s = legendre_euler(a, q);
        }
        for (int i = 0; i < e; ++i)
            r *= s;
    }
    return r;
}

inline i128 eval(const std::vector<i128>& c, i128 x)
{
    i128 v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        v = v * x + *it;
    return v;
}

/// c_g(f) by the literal definition: walk n = 0, 1, ..., collect distinct
/// primes not dividing g, stop at the first one without g as primitive root.
struct Streak {
    u64 count = 0;
    u64 failing_prime = 0;
    i64 n_at_failure = -1;
};

inline Streak streak(const std::vector<i128>& c, i128 g, i64 n_cap)
{
    Streak s;
    std::set<u64> seen;
    for (i64 n = 0; n <= n_cap; ++n) {
        const i128 v = eval(c, n);
        if (v < 2 || !is_prime(static_cast<u64>(v)))
            continue;
        const u64 p = static_cast<u64>(v);
        if (!seen.insert(p).second || mod(g, p) == 0)
            continue;
        if (order_by_divisors(g, p) == p - 1) {
            ++s.count;
        } else {
            s.failing_prime = p;
            s.n_at_failure = n;
            return s;
        }
    }
    return s;
}

} // namespace oracle
