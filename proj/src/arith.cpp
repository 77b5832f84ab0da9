#include "qprim/arith.hpp"

#include "qprim/error.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace qprim::arith {

namespace {

constexpr u64 kTrialBound = 100000;

struct TrialPrime {
    u64 p;
    u64 inv;    // p^{-1} mod 2^64
    u64 limit;  // floor((2^64 - 1) / p)
};

u64 inverse_mod_2_64(u64 n)
{
    u64 x = n;  // correct to 3 bits for odd n
    for (int i = 0; i < 5; ++i)
        x *= 2 - n * x;
    return x;
}

const std::vector<TrialPrime>& trial_primes()
{
    static const std::vector<TrialPrime> table = [] {
        std::vector<TrialPrime> out;
        for (u64 p : primes_up_to(kTrialBound)) {
            if (p == 2)
                continue;
            out.push_back({p, inverse_mod_2_64(p), ~u64{0} / p});
        }
        return out;
    }();
    return table;
}

int jacobi_u64(u64 a, u64 n)
{
    int result = 1;
    a %= n;
    while (a != 0) {
        const int tz = std::countr_zero(a);
        a >>= tz;
        if ((tz & 1) && ((n & 7) == 3 || (n & 7) == 5))
            result = -result;
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

int jacobi_u128(u128 a, u128 n)
{
    int result = 1;
    a %= n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            if ((n & 7) == 3 || (n & 7) == 5)
                result = -result;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3)
            result = -result;
        a %= n;
        if (n <= ~u64{0})
            return result * jacobi_u64(static_cast<u64>(a), static_cast<u64>(n));
    }
    return n == 1 ? result : 0;
}

u128 mod_nonneg(i128 a, u128 n)
{
    if (a >= 0)
        return static_cast<u128>(a) % n;
    const u128 r = static_cast<u128>(-(a + 1)) % n;  // avoids overflow at INT128_MIN
    return n - 1 - r;
}

bool miller_rabin(const Montgomery& mont, u64 n, u64 d, int s, u64 base)
{
    base %= n;
    if (base == 0)
        return true;
    const u64 one = mont.one();
    const u64 minus_one = n - one;
    u64 x = mont.pow(mont.to(base), d);
    if (x == one || x == minus_one)
        return true;
    for (int i = 1; i < s; ++i) {
        x = mont.mul(x, x);
        if (x == minus_one)
            return true;
        if (x == one)
            return false;
    }
    return false;
}

u64 gcd_u64(u64 a, u64 b)
{
    return std::gcd(a, b);
}

// Brent's cycle-finding variant of Pollard rho; n odd composite with no factor below kTrialBound.
u64 find_factor(u64 n)
{
    const Montgomery mont(n);
    constexpr int kBatch = 128;
    constexpr u64 kMaxIterations = u64{1} << 26;
    for (u64 c = 1; c < 64; ++c) {
        const u64 cm = mont.to(c);
        auto step = [&](u64 v) {
            const u64 sq = mont.mul(v, v);
            u64 r = sq + cm;
            if (r < sq || r >= n)
                r -= n;
            return r;
        };
        u64 y = mont.to(2 + c);
        u64 x = y;
        u64 ys = y;
        u64 q = mont.one();
        u64 g = 1;
        u64 r = 1;
        u64 iterations = 0;
        while (g == 1 && iterations < kMaxIterations) {
            x = y;
            for (u64 i = 0; i < r; ++i)
                y = step(y);
            u64 k = 0;
            while (k < r && g == 1) {
                ys = y;
                const u64 lim = std::min<u64>(kBatch, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = step(y);
                    q = mont.mul(q, x > y ? x - y : y - x);
                }
                g = gcd_u64(q, n);
                k += lim;
                iterations += lim;
            }
            r <<= 1;
        }
        if (g == n) {
            // Backtrack one step at a time from the saved position.
            do {
                ys = step(ys);
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != 1 && g != n)
            return g;
    }
    throw Error(ErrorKind::unsupported_magnitude,
                "rho failed to split " + to_string(static_cast<u128>(n)));
}

void factor_cofactor(u64 n, std::vector<u64>& out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    const u64 d = find_factor(n);
    factor_cofactor(d, out);
    factor_cofactor(n / d, out);
}

void strip_small(u128& n, std::vector<u64>& out)
{
    while ((n & 1) == 0 && n > 1) {
        n >>= 1;
        out.push_back(2);
    }
    for (const TrialPrime& tp : trial_primes()) {
        if (static_cast<u128>(tp.p) * tp.p > n)
            break;
        if (n <= ~u64{0}) {
            u64 m = static_cast<u64>(n);
            while (m * tp.inv <= tp.limit) {
                m *= tp.inv;  // exact division
                out.push_back(tp.p);
            }
            n = m;
        } else {
            while (n % tp.p == 0) {
                n /= tp.p;
                out.push_back(tp.p);
            }
        }
    }
}

Factorization collect(u128 value, std::vector<u64>& primes)
{
    std::sort(primes.begin(), primes.end());
    Factorization f;
    f.value = value;
    for (u64 p : primes) {
        if (!f.factors.empty() && f.factors.back().prime == p)
            ++f.factors.back().exponent;
        else
            f.factors.push_back({p, 1});
    }
    return f;
}

} // namespace

int jacobi(i128 a, i128 n)
{
    if (n <= 0 || (n & 1) == 0)
        throw Error(ErrorKind::invalid_modulus, "Jacobi symbol needs odd positive modulus");
    const u128 un = static_cast<u128>(n);
    const u128 ua = mod_nonneg(a, un);
    if (un <= ~u64{0})
        return jacobi_u64(static_cast<u64>(ua), static_cast<u64>(un));
    return jacobi_u128(ua, un);
}

int kronecker(i128 a, i128 n)
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            result = -result;
    }
    if ((n & 1) == 0) {
        if ((a & 1) == 0)
            return 0;
        int twos = 0;
        while ((n & 1) == 0) {
            n >>= 1;
            ++twos;
        }
        const int a8 = static_cast<int>(mod_nonneg(a, 8));
        if ((twos & 1) && (a8 == 3 || a8 == 5))
            result = -result;
    }
    if (n == 1)
        return result;
    return result * jacobi(a, n);
}

u64 powmod(u64 base, u64 exp, u64 m)
{
    if (m == 1)
        return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 reduce_mod(i128 g, u64 m)
{
    return static_cast<u64>(mod_nonneg(g, m));
}

Montgomery::Montgomery(u64 modulus) : n_(modulus)
{
    if ((modulus & 1) == 0 || modulus < 3)
        throw Error(ErrorKind::invalid_modulus, "Montgomery form needs an odd modulus >= 3");
    inv_ = inverse_mod_2_64(modulus);
    const u64 r1 = (0 - modulus) % modulus;
    one_ = r1;
    r2_ = static_cast<u64>(static_cast<u128>(r1) * r1 % modulus);
}

u64 Montgomery::pow(u64 a, u64 e) const
{
    u64 result = one_;
    while (e > 0) {
        if (e & 1)
            result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : kSmall) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    if (n < 41 * 41)
        return true;
    u64 d = n - 1;
    const int s = std::countr_zero(d);
    d >>= s;
    const Montgomery mont(n);
    // Smallest bases proven sufficient below each bound (Jaeschke; Sorenson-Webster).
    int bases = 12;
    if (n < 25326001ULL)
        bases = 3;
    else if (n < 3215031751ULL)
        bases = 4;
    else if (n < 2152302898747ULL)
        bases = 5;
    else if (n < 3474749660383ULL)
        bases = 6;
    else if (n < 341550071728321ULL)
        bases = 7;
    else if (n < 3825123056546413051ULL)
        bases = 9;
    for (int i = 0; i < bases; ++i)
        if (!miller_rabin(mont, n, d, s, kSmall[i]))
            return false;
    return true;
}

bool is_prime_wide(i128 n)
{
    if (n < 2)
        return false;
    if (!fits_u64(n))
        return is_prime_u128(static_cast<u128>(n));
    return is_prime(static_cast<u64>(n));
}

u128 Factorization::product() const
{
    u128 result = 1;
    for (const auto& pp : factors)
        for (int i = 0; i < pp.exponent; ++i)
            result *= pp.prime;
    return result;
}

std::vector<u64> Factorization::primes() const
{
    std::vector<u64> out;
    out.reserve(factors.size());
    for (const auto& pp : factors)
        out.push_back(pp.prime);
    return out;
}

Factorization factor(u64 n)
{
    return factor_wide(n);
}

Factorization factor_wide(u128 n)
{
    if (n == 0)
        throw Error(ErrorKind::invalid_input, "cannot factor 0");
    const u128 value = n;
    std::vector<u64> primes;
    strip_small(n, primes);
    if (n > 1) {
        if (n > ~u64{0})
            throw Error(ErrorKind::unsupported_magnitude,
                        "cofactor " + to_string(n) + " exceeds the 64-bit factoring range");
        factor_cofactor(static_cast<u64>(n), primes);
    }
    return collect(value, primes);
}

GroupOrderPrimes group_order_primes(u64 p)
{
    GroupOrderPrimes out;
    for (const auto& pp : factor(p - 1).factors)
        out.primes[static_cast<std::size_t>(out.count++)] = pp.prime;
    return out;
}

u64 multiplicative_order(i128 g, u64 p, const Factorization& p_minus_1)
{
    if (p < 2)
        throw Error(ErrorKind::invalid_modulus, "modulus must be prime");
    const u64 gm = reduce_mod(g, p);
    if (gm == 0)
        throw Error(ErrorKind::invalid_base, "p divides g");
    u64 order = p - 1;
    for (const auto& pp : p_minus_1.factors) {
        for (int i = 0; i < pp.exponent; ++i) {
            if (powmod(gm, order / pp.prime, p) != 1)
                break;
            order /= pp.prime;
        }
    }
    return order;
}

u64 multiplicative_order(i128 g, u64 p)
{
    if (p == 2) {
        if (reduce_mod(g, 2) == 0)
            throw Error(ErrorKind::invalid_base, "p divides g");
        return 1;
    }
    return multiplicative_order(g, p, factor(p - 1));
}

u64 residual_index(i128 g, u64 p, const Factorization& p_minus_1)
{
    return (p - 1) / multiplicative_order(g, p, p_minus_1);
}

u64 residual_index(i128 g, u64 p)
{
    return (p - 1) / multiplicative_order(g, p);
}

bool is_primitive_root_reduced(u64 g, u64 p, std::span<const u64> primes_of_p_minus_1)
{
    if (p == 2)
        return g % 2 == 1;
    const Montgomery mont(p);
    const u64 gm = mont.to(g);
    const u64 one = mont.one();
    for (u64 q : primes_of_p_minus_1)
        if (mont.pow(gm, (p - 1) / q) == one)
            return false;
    return true;
}

bool is_primitive_root(i128 g, u64 p)
{
    if (p < 2)
        throw Error(ErrorKind::invalid_modulus, "modulus must be prime");
    const u64 gm = reduce_mod(g, p);
    if (gm == 0)
        throw Error(ErrorKind::invalid_base, "p divides g");
    if (p == 2)
        return true;
    const GroupOrderPrimes q = group_order_primes(p);
    return is_primitive_root_reduced(gm, p, q.view());
}

std::vector<u64> primes_up_to(u64 limit)
{
    std::vector<u64> out;
    if (limit < 2)
        return out;
    // Odd-only sieve: index i represents 2i + 1.
    const u64 half = limit / 2 + 1;
    std::vector<bool> composite(half, false);
    out.push_back(2);
    for (u64 i = 1; i < half; ++i) {
        if (composite[i])
            continue;
        const u64 p = 2 * i + 1;
        if (p > limit)
            break;
        out.push_back(p);
        for (u64 j = (p * p) / 2; j < half; j += p)
            composite[j] = true;
    }
    return out;
}

u64 euler_phi(u64 n)
{
    if (n == 0)
        return 0;
    u64 result = n;
    for (const auto& pp : factor(n).factors)
        result = result / pp.prime * (pp.prime - 1);
    return result;
}

bool is_squarefree(i128 n)
{
    if (n == 0)
        return false;
    for (const auto& pp : factor_wide(static_cast<u128>(abs128(n))).factors)
        if (pp.exponent > 1)
            return false;
    return true;
}

SquarefreeSplit squarefree_split(i128 n)
{
    if (n == 0)
        throw Error(ErrorKind::invalid_input, "zero has no squarefree part");
    i128 s = n < 0 ? -1 : 1;
    i128 k = 1;
    for (const auto& pp : factor_wide(static_cast<u128>(abs128(n))).factors) {
        for (int i = 0; i < pp.exponent / 2; ++i)
            k *= pp.prime;
        if (pp.exponent % 2 == 1)
            s *= pp.prime;
    }
    return {s, k};
}

} // namespace qprim::arith
