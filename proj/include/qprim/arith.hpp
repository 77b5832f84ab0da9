#pragma once

// Exact integer and modular primitives: Kronecker symbols, deterministic
// primality, factorization and multiplicative orders for 64-bit moduli.

#include "qprim/int128.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace qprim::arith {

/// Kronecker symbol (a/n) for any a and n, including n <= 0.
int kronecker(i128 a, i128 n);

/// Jacobi symbol (a/n) for odd n > 0.
int jacobi(i128 a, i128 n);

inline u64 mulmod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m);

/// Reduces g into [0, m).
u64 reduce_mod(i128 g, u64 m);

/// Montgomery multiplication context for an odd modulus below 2^64.
class Montgomery {
public:
    explicit Montgomery(u64 modulus);

    u64 modulus() const { return n_; }
    u64 one() const { return one_; }
    u64 to(u64 a) const { return reduce(static_cast<u128>(a % n_) * r2_); }
    u64 from(u64 a) const { return reduce(a); }
    u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
    u64 pow(u64 a, u64 e) const;

private:
    u64 reduce(u128 t) const
    {
        const u64 m = static_cast<u64>(t) * inv_;
        const u128 mn = static_cast<u128>(m) * n_;
        const u64 t_hi = static_cast<u64>(t >> 64);
        const u64 mn_hi = static_cast<u64>(mn >> 64);
        u64 r = t_hi - mn_hi;
        if (t_hi < mn_hi)
            r += n_;
        return r;
    }

    u64 n_;
    u64 inv_;  // n^{-1} mod 2^64
    u64 r2_;   // 2^128 mod n
    u64 one_;  // 2^64 mod n
};

/// Deterministic for every n < 2^64 (Miller-Rabin over the first twelve prime
/// bases, valid below 3.18e23; smaller witness sets below their proven bounds).
bool is_prime(u64 n);

/// Convenience overload: values below 2 are not prime; values beyond 2^64 go
/// through is_prime_u128.
bool is_prime_wide(i128 n);

struct PrimePower {
    u64 prime;
    int exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    u128 value = 1;
    std::vector<PrimePower> factors;  // strictly increasing primes

    /// Recomputes the product of prime powers.
    u128 product() const;
    std::vector<u64> primes() const;
};

/// Full factorization of n >= 1 (trial division below 1e5, then Brent's rho).
Factorization factor(u64 n);

/// Factorization of a 128-bit value; the cofactor left after trial division must
/// fit in 64 bits, otherwise unsupported-magnitude is raised.
Factorization factor_wide(u128 n);

/// Distinct prime factors of p - 1 packed for hot loops (at most 15 for 64-bit p,
/// 18 below the wide primality limit).
struct GroupOrderPrimes {
    std::array<u64, 18> primes{};
    int count = 0;

    std::span<const u64> view() const { return {primes.data(), static_cast<std::size_t>(count)}; }
};

GroupOrderPrimes group_order_primes(u64 p);

/// ord_p(g) for prime p not dividing g, given the factorization of p - 1.
u64 multiplicative_order(i128 g, u64 p, const Factorization& p_minus_1);
u64 multiplicative_order(i128 g, u64 p);

/// r_p(g) = (p - 1) / ord_p(g).
u64 residual_index(i128 g, u64 p);
u64 residual_index(i128 g, u64 p, const Factorization& p_minus_1);

bool is_primitive_root(i128 g, u64 p);

/// Hot-path variant: g already reduced into [1, p), primes of p - 1 precomputed.
bool is_primitive_root_reduced(u64 g, u64 p, std::span<const u64> primes_of_p_minus_1);

// 128-bit moduli, for prime values beyond 2^64 (GMP-backed exponentiation).

constexpr u128 kWidePrimeLimit = static_cast<u128>(3317044064679887385ULL) * 1000000 + 961981;  // 3.3e24

u128 powmod_wide(u128 base, u128 exp, u128 m);

/// Deterministic for n below 3.3e24 (Miller-Rabin over the first thirteen
/// prime bases); larger n raise unsupported-magnitude.
bool is_prime_u128(u128 n);

u128 reduce_mod_wide(i128 g, u128 m);

u128 multiplicative_order_wide(i128 g, u128 p, const Factorization& p_minus_1);
u128 residual_index_wide(i128 g, u128 p);

/// g already reduced into [1, p), primes of p - 1 precomputed.
bool is_primitive_root_wide(u128 g, u128 p, std::span<const u64> primes_of_p_minus_1);

/// Distinct primes of p - 1 for p of any supported size.
GroupOrderPrimes group_order_primes_wide(u128 p);

/// All primes <= limit (sieve of Eratosthenes).
std::vector<u64> primes_up_to(u64 limit);

u64 euler_phi(u64 n);

bool is_squarefree(i128 n);

/// Splits n = s * k^2 with s squarefree and sign carried by s (n != 0).
struct SquarefreeSplit {
    i128 squarefree;
    i128 root;
};
SquarefreeSplit squarefree_split(i128 n);

} // namespace qprim::arith
