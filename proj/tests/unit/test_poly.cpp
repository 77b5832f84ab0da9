#include "qprim/error.hpp"
#include "qprim/poly.hpp"

#include "support/oracles.hpp"

#include "support/gtest_int128.hpp"
#include <gtest/gtest.h>

#include <random>

using namespace qprim;
using namespace qprim::poly;

namespace {

// #{s mod m : f(s) = t mod m} with a plain loop over exact values.
u64 count_exact(const std::vector<i128>& c, u64 m, i128 t)
{
    u64 k = 0;
    for (u64 s = 0; s < m; ++s) {
        const i128 v = oracle::eval(c, static_cast<i128>(s)) - t;
        if (v % static_cast<i128>(m) == 0)
            ++k;
    }
    return k;
}

} // namespace

TEST(PolyZ, TrimsAndEvaluates)
{
    PolyZ f({3, 0, 326, 0, 0});
    EXPECT_EQ(f.degree(), 2);
    EXPECT_EQ(eval(f, 2375), 1838843753);
    EXPECT_EQ(eval(f, 0), 3);
    EXPECT_EQ(eval(PolyZ({41, 1, 1}), 39), 1601);
    EXPECT_TRUE(oracle::is_prime(1601));
    EXPECT_EQ(PolyZ().degree(), -1);
}

TEST(PolyZ, EvalOverflowIsReported)
{
    PolyZ f({1, 0, 0, 0, 0, 1});
    EXPECT_THROW(eval(f, static_cast<i128>(1) << 30), Error);
}

TEST(PolyZ, ShiftMatchesComposition)
{
    PolyZ f({15753313937, 16921429448, 1008068});
    PolyZ g = f.shifted(599206);
    for (i128 n = -5; n <= 5; ++n)
        EXPECT_EQ(eval(g, n), eval(f, n + 599206));
}

TEST(PolyZ, EvalModAgreesWithExact)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 300; ++i) {
        std::vector<i128> c{static_cast<i64>(rng() % 2001) - 1000, static_cast<i64>(rng() % 2001) - 1000,
                            static_cast<i64>(rng() % 2001) - 1000};
        const u64 m = 2 + rng() % 500;
        const i128 s = static_cast<i64>(rng() % 10000);
        const i128 v = oracle::eval(c, s);
        EXPECT_EQ(eval_mod(PolyZ(c), static_cast<u64>(s), m), oracle::mod(v, m));
    }
}

TEST(FamilyF, Examples)
{
    EXPECT_TRUE(in_family_F(QuadraticPoly(326, 0, 3)));
    EXPECT_FALSE(in_family_F(QuadraticPoly(2, 2, 2)));
    EXPECT_FALSE(in_family_F(QuadraticPoly(1, 2, 1)));
    EXPECT_TRUE(in_family_F(QuadraticPoly(1, 1, 41)));
    EXPECT_FALSE(in_family_F(QuadraticPoly(1, 1, 2)));  // a+b and c both even
    EXPECT_EQ(QuadraticPoly(326, 0, 3).d(), -3912);
}

TEST(Counts, Examples)
{
    EXPECT_EQ(count_roots_mod(PolyZ({3, 0, 326}), 3), 1u);
    EXPECT_EQ(count_roots_mod(PolyZ({0, 1}), 7), 1u);
    EXPECT_EQ(count_roots_mod(PolyZ({1, 0, 1}), 5), 2u);
    EXPECT_EQ(count_residue_class(PolyZ({1, 0, 1}), 8, 1), 2u);
    EXPECT_EQ(count_residue_class(PolyZ({7, 0, 10}), 3, 1), 1u);
}

TEST(Counts, PartitionAndRootsAgree)
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        std::vector<i128> c{static_cast<i64>(rng() % 201) - 100, static_cast<i64>(rng() % 201) - 100,
                            1 + static_cast<i64>(rng() % 100)};
        const PolyZ f(c);
        for (u64 m = 2; m <= 100; ++m) {
            u64 total = 0;
            for (u64 t = 0; t < m; ++t)
                total += count_residue_class(f, m, static_cast<i128>(t));
            ASSERT_EQ(total, m);
            ASSERT_EQ(count_roots_mod(f, m), count_residue_class(f, m, 0));
            ASSERT_EQ(count_residue_class(f, m, 1), count_exact(c, m, 1));
        }
    }
}

TEST(Counts, ChineseRemainder)
{
    std::mt19937_64 rng(10);
    for (int i = 0; i < 100; ++i) {
        const PolyZ f({static_cast<i64>(rng() % 61) - 30, static_cast<i64>(rng() % 61) - 30,
                       1 + static_cast<i64>(rng() % 30)});
        const u64 m1 = 2 + rng() % 29, m2 = 2 + rng() % 29;
        if (std::gcd(m1, m2) != 1)
            continue;
        ASSERT_EQ(count_roots_mod(f, m1 * m2), count_roots_mod(f, m1) * count_roots_mod(f, m2));
    }
}

TEST(Mod8, Examples)
{
    const Mod8Profile a = mod8_profile(PolyZ({1, 0, 1}));
    EXPECT_EQ(a, (Mod8Profile{Rational(1, 2), 0, Rational(1, 2), 0}));
    const Mod8Profile b = mod8_profile(PolyZ({0, 1}));
    EXPECT_EQ(b, (Mod8Profile{Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)}));
    // 326s^2 + 3 is 3 mod 8 for even s and 1 mod 8 for odd s.
    for (i128 s = 0; s < 8; ++s)
        EXPECT_EQ(oracle::mod(326 * s * s + 3, 8), s % 2 == 0 ? 3u : 1u);
    const Mod8Profile c = mod8_profile(PolyZ({3, 0, 326}));
    EXPECT_EQ(c, (Mod8Profile{Rational(1, 2), Rational(1, 2), 0, 0}));
    EXPECT_THROW(mod8_profile(PolyZ({2, 0, 2})), Error);
}

TEST(Mod8, ComponentsSumToOne)
{
    std::mt19937_64 rng(12);
    int tested = 0;
    while (tested < 100) {
        const PolyZ f({static_cast<i64>(rng() % 2001) - 1000, static_cast<i64>(rng() % 2001) - 1000,
                       1 + static_cast<i64>(rng() % 1000)});
        if (count_residue_class(f, 2, 1) == 0)
            continue;
        const auto p = mod8_profile(f);
        ASSERT_EQ(p.alpha1 + p.alpha3 + p.alpha5 + p.alpha7, Rational(1));
        ++tested;
    }
}

TEST(Parse, RoundTrip)
{
    EXPECT_EQ(parse_coefficients("3,0,326"), PolyZ({3, 0, 326}));
    EXPECT_EQ(parse_quadratic("1008068,16921429448,15753313937"),
              QuadraticPoly(1008068, 16921429448, 15753313937));
    EXPECT_THROW(parse_quadratic("1,2"), Error);
    EXPECT_THROW(parse_coefficients("1,a"), Error);
}

TEST(Format, Text)
{
    EXPECT_EQ(format(PolyZ({15753313937, 16921429448, 1008068})), "1008068X^2+16921429448X+15753313937");
    EXPECT_EQ(format(PolyZ({41, 1, 1})), "X^2+X+41");
    EXPECT_EQ(format(PolyZ({-1, 0, -3})), "-3X^2-1");
    EXPECT_EQ(format(PolyZ()), "0");
}
