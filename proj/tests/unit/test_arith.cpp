#include "qprim/arith.hpp"
#include "qprim/error.hpp"

#include "support/oracles.hpp"

#include "support/gtest_int128.hpp"
#include <gtest/gtest.h>

#include <random>

using namespace qprim;
using namespace qprim::arith;

TEST(Kronecker, Examples)
{
    EXPECT_EQ(kronecker(2, 7), 1);
    for (int a = -20; a <= 20; ++a)
        EXPECT_EQ(kronecker(a, 1), 1);
    EXPECT_EQ(kronecker(-163, 41), 1);
    EXPECT_EQ(oracle::legendre_by_squares(-163, 41), 1);
}

TEST(Kronecker, ZeroModulus)
{
    EXPECT_EQ(kronecker(1, 0), 1);
    EXPECT_EQ(kronecker(-1, 0), 1);
    EXPECT_EQ(kronecker(2, 0), 0);
    EXPECT_EQ(kronecker(0, 0), 0);
}

TEST(Kronecker, MatchesMultiplicativeDefinition)
{
    for (int a = -80; a <= 80; ++a)
        for (int n = -80; n <= 80; ++n)
            ASSERT_EQ(kronecker(a, n), oracle::kronecker(a, n)) << a << "/" << n;
}

TEST(Kronecker, EulerCriterionForOddPrimes)
{
    for (u64 p : oracle::sieve(1000)) {
        if (p == 2)
            continue;
        for (u64 a = 0; a < p; ++a)
            ASSERT_EQ(kronecker(static_cast<i128>(a), static_cast<i128>(p)), oracle::legendre_euler(a, p));
    }
}

TEST(Kronecker, LargeArguments)
{
    const i128 a = static_cast<i128>(9828323860172600203ULL) * 7 + 3;
    for (u64 p : {1000003ULL, 998244353ULL, 2305843009213693951ULL})
        EXPECT_EQ(kronecker(a, static_cast<i128>(p)), kronecker(a % static_cast<i128>(p), static_cast<i128>(p)));
}

TEST(Jacobi, MatchesProductOfLegendre)
{
    for (int n = 1; n < 400; n += 2)
        for (int a = -50; a <= 50; ++a)
            ASSERT_EQ(jacobi(a, n), oracle::kronecker(a, n)) << a << "/" << n;
}

TEST(IsPrime, Examples)
{
    EXPECT_TRUE(is_prime(1838843753));
    EXPECT_FALSE(is_prime(1));
    EXPECT_TRUE(is_prime(7297));
    EXPECT_FALSE(is_prime(0));
    EXPECT_TRUE(is_prime(2));
}

TEST(IsPrime, AgreesWithSieveToOneMillion)
{
    const auto primes = oracle::sieve(1000000);
    std::vector<bool> is(1000001, false);
    for (u64 p : primes)
        is[p] = true;
    for (u64 n = 0; n <= 1000000; ++n)
        ASSERT_EQ(is_prime(n), is[n]) << n;
}

TEST(IsPrime, StrongPseudoprimes)
{
    // Strong pseudoprimes to long runs of prime bases.
    EXPECT_FALSE(is_prime(3215031751ULL));
    EXPECT_FALSE(is_prime(2152302898747ULL));
    EXPECT_FALSE(is_prime(3474749660383ULL));
    EXPECT_FALSE(is_prime(341550071728321ULL));
    EXPECT_FALSE(is_prime(3825123056546413051ULL));
}

TEST(IsPrime, NearTheTopOfTheRange)
{
    EXPECT_TRUE(is_prime(2305843009213693951ULL));   // 2^61 - 1
    EXPECT_TRUE(is_prime(18446744073709551557ULL));  // largest prime below 2^64
    for (u64 n = 18446744073709551558ULL; n != 0; ++n)
        ASSERT_FALSE(is_prime(n));
}

TEST(IsPrime, ProductsOfTwoPrimes)
{
    std::mt19937_64 rng(7);
    const auto primes = oracle::sieve(4000000);
    for (int i = 0; i < 2000; ++i) {
        const u64 p = primes[rng() % primes.size()];
        const u64 q = primes[rng() % primes.size()];
        ASSERT_FALSE(is_prime(p * q));
    }
}

TEST(IsPrimeWide, BeyondTwoToThe64)
{
    const u128 two64 = static_cast<u128>(1) << 64;
    EXPECT_TRUE(is_prime_u128(two64 + 13));  // least prime above 2^64
    for (u128 k = 1; k < 13; ++k)
        EXPECT_FALSE(is_prime_u128(two64 + k));
    // Strong pseudoprime to every prime base up to 37.
    const u128 psi12 = static_cast<u128>(318665857834031ULL) * 1000000000ULL + 151167461ULL;
    EXPECT_FALSE(is_prime_u128(psi12));
    // 2^89 - 1 is prime but lies beyond the certified range.
    EXPECT_THROW(is_prime_u128((static_cast<u128>(1) << 89) - 1), Error);
    // (2^61 - 1)(2^5 - 1) and a square of a 40-bit prime.
    EXPECT_FALSE(is_prime_u128(static_cast<u128>(2305843009213693951ULL) * 31));
    EXPECT_FALSE(is_prime_u128(static_cast<u128>(1099511627791ULL) * 1099511627791ULL));
    EXPECT_TRUE(is_prime_wide(static_cast<i128>(two64 + 13)));
}

TEST(Factor, Examples)
{
    auto f = factor(1838843752);
    EXPECT_EQ(f.factors, (std::vector<PrimePower>{{2, 3}, {83, 1}, {2769343, 1}}));
    EXPECT_TRUE(factor(1).factors.empty());
    auto g = factor(40);
    EXPECT_EQ(g.factors, (std::vector<PrimePower>{{2, 3}, {5, 1}}));
}

TEST(Factor, RoundTripToOneMillion)
{
    for (u64 n = 1; n <= 1000000; ++n) {
        const auto f = factor(n);
        ASSERT_EQ(f.product(), n);
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            ASSERT_TRUE(oracle::is_prime(f.factors[i].prime));
            if (i)
                ASSERT_LT(f.factors[i - 1].prime, f.factors[i].prime);
        }
    }
}

TEST(Factor, Random60BitIntegers)
{
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const u64 n = (rng() >> 4) | 1ULL << 59;
        const auto f = factor(n);
        ASSERT_EQ(f.product(), n);
        ASSERT_EQ(f.value, n);
        for (std::size_t k = 0; k < f.factors.size(); ++k) {
            ASSERT_TRUE(is_prime(f.factors[k].prime));
            if (k)
                ASSERT_LT(f.factors[k - 1].prime, f.factors[k].prime);
        }
    }
}

TEST(Factor, HardSemiprimes)
{
    const u64 p = 4294967291ULL, q = 4294967279ULL;
    const auto f = factor(p * q);
    EXPECT_EQ(f.factors, (std::vector<PrimePower>{{q, 1}, {p, 1}}));
    const auto g = factor(18446744073709551557ULL);
    EXPECT_EQ(g.factors.size(), 1u);
}

TEST(Factor, WideValues)
{
    // Small primes are stripped by trial division, leaving a 61-bit prime cofactor.
    const u128 n = static_cast<u128>(3 * 3 * 7 * 997) * 1009 * 2305843009213693951ULL;
    const auto f = factor_wide(n);
    EXPECT_EQ(f.product(), n);
    EXPECT_EQ(f.factors.size(), 5u);
    const u128 big = static_cast<u128>(2305843009213693951ULL) * 2305843009213693951ULL;
    EXPECT_THROW(factor_wide(big), Error);
}

TEST(Order, Examples)
{
    EXPECT_EQ(multiplicative_order(10, 7), 6u);
    EXPECT_EQ(multiplicative_order(1, 13), 1u);
    const u64 p = 1838843753;
    EXPECT_EQ(multiplicative_order(326, p), (p - 1) / 83);
    EXPECT_EQ(residual_index(326, p), 83u);
    EXPECT_GT(residual_index(10, 7297), 1u);
    EXPECT_EQ(residual_index(10, 7297), (7297 - 1) / oracle::order(10, 7297));
    EXPECT_THROW(multiplicative_order(14, 7), Error);
    EXPECT_THROW(residual_index(0, 5), Error);
}

TEST(Order, AgreesWithPowerEnumeration)
{
    for (u64 p : oracle::sieve(1000)) {
        for (i128 g = -30; g <= 60; ++g) {
            if (oracle::mod(g, p) == 0)
                continue;
            const u64 ord = multiplicative_order(g, p);
            ASSERT_EQ(ord, oracle::order(g, p)) << "g=" << g << " p=" << p;
            ASSERT_EQ(ord * residual_index(g, p), p - 1);
        }
    }
}

TEST(PrimitiveRoot, Examples)
{
    EXPECT_FALSE(is_prime(329));
    EXPECT_TRUE(is_primitive_root(326, 3));
    EXPECT_TRUE(is_primitive_root(2, 11));
    EXPECT_TRUE(is_primitive_root(10, 7));
    EXPECT_TRUE(is_primitive_root(3, 2));
    EXPECT_THROW(is_primitive_root(326, 163), Error);
}

TEST(PrimitiveRoot, AgreesWithSubgroupEnumeration)
{
    for (u64 p : oracle::sieve(1000)) {
        if (p == 2)
            continue;
        for (u64 g = 1; g < p; ++g) {
            // <g> enumerated directly
            std::vector<bool> hit(p, false);
            u64 x = 1, size = 0;
            do {
                hit[x] = true;
                ++size;
                x = oracle::mulmod(x, g, p);
            } while (x != 1);
            ASSERT_EQ(is_primitive_root(static_cast<i128>(g), p), size == p - 1) << g << " mod " << p;
            ASSERT_EQ(is_primitive_root(static_cast<i128>(g) - static_cast<i128>(p) * 3, p), size == p - 1);
        }
    }
}

TEST(PrimitiveRoot, WideModulus)
{
    const u128 p = (static_cast<u128>(1) << 64) + 13;
    const auto gp = group_order_primes_wide(p);
    u128 rest = p - 1;
    for (u64 q : gp.view())
        while (rest % q == 0)
            rest /= q;
    EXPECT_EQ(rest, 1u);
    // g is a primitive root iff g^((p-1)/q) != 1 for each q; compare the two paths.
    for (u64 g = 2; g < 40; ++g) {
        bool expect = true;
        for (u64 q : gp.view())
            if (powmod_wide(g, (p - 1) / q, p) == 1)
                expect = false;
        EXPECT_EQ(is_primitive_root_wide(g, p, gp.view()), expect);
        const u128 r = residual_index_wide(static_cast<i128>(g), p);
        EXPECT_EQ(r == 1, expect);
        EXPECT_EQ(powmod_wide(g, (p - 1) / r, p), 1u);
    }
}

TEST(Powmod, WideAgreesWithNarrow)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const u64 m = rng() | 1, b = rng(), e = rng();
        EXPECT_EQ(powmod_wide(b, e, m), powmod(b, e, m));
        EXPECT_EQ(powmod(b, e, m), oracle::powmod(b, e, m));
    }
}

TEST(Sieve, PrimesUpTo)
{
    EXPECT_EQ(primes_up_to(1).size(), 0u);
    EXPECT_EQ(primes_up_to(2), (std::vector<u64>{2}));
    EXPECT_EQ(primes_up_to(100000), oracle::sieve(100000));
}

TEST(Misc, EulerPhiAndSquarefree)
{
    EXPECT_EQ(euler_phi(1), 1u);
    EXPECT_EQ(euler_phi(36), 12u);
    EXPECT_TRUE(is_squarefree(-163));
    EXPECT_FALSE(is_squarefree(12));
    EXPECT_TRUE(is_squarefree(4472988326827347533LL));
    const auto s = squarefree_split(-12);
    EXPECT_EQ(s.squarefree, -3);
    EXPECT_EQ(s.root, 2);
    const auto t = squarefree_split(170363492);
    EXPECT_EQ(t.squarefree, 252017);
    EXPECT_EQ(t.root, 26);
}
