#include "qprim/densities.hpp"
#include "qprim/error.hpp"

#include "support/oracles.hpp"

#include "support/gtest_int128.hpp"
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace qprim;
using namespace qprim::densities;
using charsums::make_discriminant;
using poly::PolyZ;
using poly::QuadraticPoly;

namespace {

constexpr double kPi = std::numbers::pi;

// The defining product, counting residues by enumeration.
double delta_by_enumeration(const std::vector<i128>& c, u64 cutoff)
{
    double value = 1;
    for (u64 q : oracle::sieve(cutoff)) {
        if (q == 2)
            continue;
        u64 zero = 0, one = 0;
        for (u64 s = 0; s < q; ++s) {
            const u64 v = oracle::mod(oracle::eval(c, static_cast<i128>(s)), q);
            zero += v == 0;
            one += v == 1;
        }
        value *= 1 - static_cast<double>(one) / (static_cast<double>(q) * static_cast<double>(q - zero));
    }
    return value;
}

// M(p, s) summed term by term from its definition.
double expected_max_series(double p, u64 s)
{
    double total = 0;
    for (int j = 1; j < 200000; ++j) {
        const double term = j * (std::pow(1 - std::pow(p, j + 1), static_cast<double>(s)) -
                                 std::pow(1 - std::pow(p, j), static_cast<double>(s)));
        total += term;
        if (j > 10 && term < 1e-15 * total && std::pow(p, j) * static_cast<double>(s) < 1e-6)
            break;
    }
    return total;
}

} // namespace

TEST(LValue, ClosedForms)
{
    EXPECT_NEAR(static_cast<double>(L_chi(1, make_discriminant(-3)).value), kPi / (3 * std::sqrt(3.0)), 1e-9);
    EXPECT_NEAR(static_cast<double>(L_chi(1, make_discriminant(-4)).value), kPi / 4, 1e-9);
    // Catalan's constant.
    EXPECT_NEAR(static_cast<double>(L_chi(2, make_discriminant(-4)).value), 0.915965594177219015, 1e-9);
    // Real quadratic fields: 2 log(golden ratio)/sqrt 5 and log(1 + sqrt 2)/sqrt 2.
    EXPECT_NEAR(static_cast<double>(L_chi(1, make_discriminant(5)).value),
                2 * std::log((1 + std::sqrt(5.0)) / 2) / std::sqrt(5.0), 1e-9);
    EXPECT_NEAR(static_cast<double>(L_chi(1, make_discriminant(8)).value),
                std::log(1 + std::sqrt(2.0)) / std::sqrt(2.0), 1e-9);
    // Class number one: L(1, chi_D) = pi / sqrt|D|.
    for (i64 D : {-7, -8, -11, -19, -43, -67, -163})
        EXPECT_NEAR(static_cast<double>(L_chi(1, make_discriminant(D)).value), kPi / std::sqrt(-static_cast<double>(D)),
                    1e-9)
            << D;
    // h(-23) = 3.
    EXPECT_NEAR(static_cast<double>(L_chi(1, make_discriminant(-23)).value), 3 * kPi / std::sqrt(23.0), 1e-9);
}

TEST(LValue, ReportsErrorAndRejectsBadInput)
{
    const auto L = L_chi(1, make_discriminant(-111763));
    EXPECT_LE(L.abs_error, 1e-9);
    EXPECT_EQ(L.s, 1);
    EXPECT_THROW(L_chi(3, make_discriminant(-3)), Error);
    EXPECT_THROW(L_chi(1, charsums::FundamentalDiscriminant{1, 1}), Error);
}

TEST(HardyLittlewood, KnownConstants)
{
    const auto a = hl_constant(-163);
    EXPECT_NEAR(a.value, 3.3197732, 1e-5);
    EXPECT_LE(a.tail_bound, 1e-9);
    EXPECT_NEAR(hl_constant(-111763).value, 3.6319998, 1e-5);
}

TEST(HardyLittlewood, RejectsWrongClass)
{
    EXPECT_THROW(hl_constant(-7), Error);    // 1 mod 8
    EXPECT_THROW(hl_constant(5), Error);     // positive
    EXPECT_THROW(hl_constant(-4), Error);
    EXPECT_THROW(hl_constant(-5 * 9 * 3), Error);
}

TEST(HardyLittlewood, DirectProductAgrees)
{
    for (i64 D : {-163, -11, -19, -43, -111763}) {
        const auto fast = hl_constant(D);
        const auto slow = hl_constant_direct(D, 100000);
        EXPECT_NEAR(slow.value, fast.value, slow.tail_bound + fast.tail_bound) << D;
        EXPECT_GT(slow.tail_bound, 0);
    }
}

TEST(HardyLittlewood, StableUnderCutoffDoubling)
{
    for (i64 D : {-163, -111763}) {
        const double tol = 1e-9;
        EXPECT_NEAR(hl_constant(D, tol, 100000).value, hl_constant(D, tol, 200000).value, 2 * tol) << D;
    }
}

TEST(EulerProduct, IdentityAtSTwo)
{
    for (i64 D : {-163, -3912, 5, 12, -3, -4, 8}) {
        const auto fd = make_discriminant(D);
        const auto identity = euler_product_s(2, fd);
        const auto direct = euler_product_direct(2, fd, 100000);
        EXPECT_NEAR(identity.value, direct.value, 1e-8) << D;
        EXPECT_LE(std::fabs(identity.value - direct.value), identity.tail_bound + direct.tail_bound + 1e-12) << D;
    }
}

TEST(EulerProduct, SOneIsTheHardyLittlewoodConstant)
{
    // For (D/2) = -1 the s = 1 product is C(D) itself.
    for (i64 D : {-163, -11, -111763}) {
        const auto s1 = euler_product_s(1, make_discriminant(D));
        const auto c = hl_constant(D);
        EXPECT_NEAR(s1.value, c.value, s1.tail_bound + c.tail_bound) << D;
        EXPECT_NEAR(s1.value, c.value, 1e-5) << D;
    }
}

TEST(Delta, LinearPolynomialGivesArtinConstant)
{
    // Over odd primes only: twice Artin's constant 0.3739558136...
    const auto r = delta(PolyZ({0, 1}), 1000000);
    EXPECT_NEAR(r.value, 2 * 0.3739558136192023, r.tail_bound + 1e-12);
    EXPECT_LT(r.tail_bound, 1e-6);
}

TEST(Delta, ExampleQualities)
{
    const PolyZ ex1({15753313937, 16921429448, 1008068});
    EXPECT_NEAR(delta(ex1).value, 0.999453, 2e-5);
    const PolyZ f2({static_cast<i128>(119471867164612830LL), 160744427648, 54151});
    EXPECT_NEAR(delta(f2).value, 0.999535, 2e-5);
}

TEST(Delta, MatchesEnumeratedProduct)
{
    std::mt19937_64 rng(200);
    for (int i = 0; i < 20; ++i) {
        const i128 a = 1 + static_cast<i128>(rng() % 500);
        const i128 b = static_cast<i128>(rng() % 1001) - 500;
        const i128 c = static_cast<i128>(rng() % 1001) - 500;
        if (c == 0 && b == 0)
            continue;
        const PolyZ f({c, b, a});
        try {
            const double v = delta(f, 2000).value;
            EXPECT_NEAR(v, delta_by_enumeration({c, b, a}, 2000), 1e-12) << poly::format(f);
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::degenerate);
        }
    }
    EXPECT_NEAR(delta(PolyZ({1, 1, 0, 1}), 500).value, delta_by_enumeration({1, 1, 0, 1}, 500), 1e-12);
}

TEST(Delta, DegenerateWhenEveryValueVanishes)
{
    EXPECT_THROW(delta(PolyZ({0, 3}), 100), Error);
    EXPECT_THROW(delta(PolyZ({0, 3, 3}), 100), Error);
}

TEST(Delta, BelowOneWithTail)
{
    std::mt19937_64 rng(201);
    int tested = 0;
    while (tested < 200) {
        const i128 a = 1 + static_cast<i128>(rng() % 100000);
        const i128 b = static_cast<i128>(rng() % 200001) - 100000;
        const i128 c = static_cast<i128>(rng() % 200001) - 100000;
        QuadraticPoly f(a, b, c);
        if (!poly::in_family_F(f))
            continue;
        ++tested;
        const auto r = delta(f.to_poly(), 10000);
        ASSERT_LT(r.value + r.tail_bound, 1.0) << poly::format(f);
        ASSERT_GT(r.value, 0.0);
    }
}

TEST(Delta, AccelerationNearsLongerProduct)
{
    const PolyZ lehmer({3, 0, 326});
    const auto fast = delta(lehmer, 10000, true);
    const auto slow = delta(lehmer, 1000000, false);
    EXPECT_EQ(fast.method, Method::accelerated);
    EXPECT_NEAR(fast.value, slow.value, fast.tail_bound + slow.tail_bound);
    EXPECT_LT(std::fabs(fast.value - slow.value), std::fabs(delta(lehmer, 10000).value - slow.value));
}

TEST(Delta1, ClosedFormAgainstDirectProduct)
{
    // delta_1 for 326X^2 + 3 computed here from Kronecker symbols.
    double oracle_value = 1;
    for (u64 q : oracle::sieve(1000000)) {
        if (q == 2 || 326 % q == 0)
            continue;
        const int chi = oracle::kronecker(-326 * 2, static_cast<i64>(q));
        oracle_value *= 1 - (1.0 + chi) / (static_cast<double>(q) * static_cast<double>(q));
    }
    const auto r = delta1(326, 3);
    EXPECT_NEAR(r.value, oracle_value, 1e-9);
    EXPECT_NEAR(r.value, delta(PolyZ({3, 0, 326})).value, 1e-2);
    const auto g = delta1(10, 7);
    EXPECT_GT(g.value, 0);
    EXPECT_LT(g.value, 1);
}

TEST(Delta1, CommonFactorOfAAndBMinusOne)
{
    // 3 divides (A, B - 1) for 3X^2 + 4: factor 1 - 1/3.
    double oracle_value = 2.0 / 3;
    for (u64 q : oracle::sieve(1000000)) {
        if (q <= 3)
            continue;
        const int chi = oracle::kronecker(-3 * 3, static_cast<i64>(q));
        oracle_value *= 1 - (1.0 + chi) / (static_cast<double>(q) * static_cast<double>(q));
    }
    EXPECT_NEAR(delta1(3, 4).value, oracle_value, 1e-9);
}

TEST(LehmerProducts, NaiveAndCorrected)
{
    EXPECT_NEAR(lehmer_naive().value, 0.99337, 1e-4);
    const auto p1 = p1_corrected();
    EXPECT_NEAR(p1.value, 0.99323, 1e-4);
    EXPECT_LT(p1.tail_bound, 1e-6);
    EXPECT_NEAR(p1.value / (1 - p1.value), 146.7, 0.5);
    // 41 is the first split prime for -163.
    EXPECT_DOUBLE_EQ(lehmer_naive(-163, 40).value, 1.0);
    EXPECT_DOUBLE_EQ(lehmer_naive(-163, 42).value, 1 - 2.0 / (41 * 41));
}

TEST(ArtinB, Values)
{
    EXPECT_DOUBLE_EQ(artin_B(2).value, 2.0);
    const auto b = artin_B(10000000);
    EXPECT_NEAR(b.value, 2.826419997067, 1e-5);
    EXPECT_NEAR(b.value, 2.826419997067, b.tail_bound + 1e-12);
    double last = 0;
    for (u64 x : {2, 10, 1000, 100000}) {
        const double v = artin_B(x).value;
        EXPECT_GT(v, last);
        last = v;
    }
}

TEST(QProduct, Values)
{
    const std::vector<u64> a{3}, b{3, 5}, c{7};
    EXPECT_DOUBLE_EQ(q_product(a), 2.0);
    EXPECT_DOUBLE_EQ(q_product(b), 4.0);
    EXPECT_DOUBLE_EQ(q_product(c), 3.0);
    const std::vector<u64> bad{9};
    EXPECT_THROW(q_product(bad), Error);
}

TEST(SmallG, Exponents)
{
    EXPECT_DOUBLE_EQ(small_g_exponent_definition(206), 206.0 / 3);
    EXPECT_NEAR(small_g_exponent_heuristic(1), std::log10(2.826419997067), 1e-12);
    EXPECT_NEAR(small_g_exponent_heuristic(100) / 100, 0.45, 0.01);
    EXPECT_DOUBLE_EQ(streak_likelihood_exponent(10), -5.0);
}

TEST(ExpectedMax, SingleStreakIsGeometricMean)
{
    for (double p : {0.1, 0.5, 0.9, 0.99323})
        EXPECT_NEAR(expected_max(p, 1), p / (1 - p), 1e-9 * (1 + p / (1 - p))) << p;
}

TEST(ExpectedMax, MatchesSeries)
{
    for (double p : {0.5, 0.9, 0.99})
        for (u64 s : {1, 2, 10, 100, 1000})
            EXPECT_NEAR(expected_max(p, s), expected_max_series(p, s), 1e-6 * expected_max_series(p, s))
                << p << " " << s;
    EXPECT_THROW(expected_max(1.0, 5), Error);
    EXPECT_THROW(expected_max(0.0, 5), Error);
}

TEST(ExpectedMax, Monotone)
{
    double last = 0;
    for (u64 s : {1, 2, 5, 50, 500, 5000, 50000}) {
        const double v = expected_max(0.99, s);
        EXPECT_GE(v, last);
        last = v;
    }
    last = 0;
    for (double p : {0.1, 0.5, 0.9, 0.99, 0.999}) {
        const double v = expected_max(p, 100);
        EXPECT_GE(v, last);
        last = v;
    }
}

TEST(ExpectedMax, HarmonicApproximation)
{
    const std::pair<double, u64> cases[] = {{0.99323, 350}, {0.99323, 25000}, {0.999453, 145700}};
    for (auto [p, s] : cases)
        EXPECT_LT(std::fabs(expected_max(p, s) - expected_max_harmonic(p, s)), 1.0) << p << " " << s;
}

TEST(ExpectedMax, Asymptotic)
{
    EXPECT_NEAR(expected_max(0.99, 1000000) / expected_max_asymptotic(0.99, 1000000), 1.0, 0.15);
}

TEST(MonteCarlo, Deterministic)
{
    const auto a = monte_carlo_max(0.9, 50, 500, 7);
    const auto b = monte_carlo_max(0.9, 50, 500, 7);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.stderr_, b.stderr_);
    EXPECT_NE(a.mean, monte_carlo_max(0.9, 50, 500, 8).mean);
}

TEST(MonteCarlo, AgreesWithSeries)
{
    const auto half = monte_carlo_max(0.5, 1, 20000, 1);
    EXPECT_NEAR(half.mean, 1.0, 3 * half.stderr_);
    for (auto [p, s] : {std::pair<double, u64>{0.9, 100}, {0.99, 1000}}) {
        const auto mc = monte_carlo_max(p, s, 2000, 42);
        EXPECT_NEAR(mc.mean, expected_max(p, s), 3 * mc.stderr_) << p << " " << s;
    }
}

TEST(BatemanHorn, Values)
{
    EXPECT_DOUBLE_EQ(bateman_horn_H(PolyZ({0, 1}), 100000).density.value, 1.0);
    EXPECT_NEAR(bateman_horn_H(PolyZ({1, 0, 1})).density.value, 1.3728, 1e-3);
    EXPECT_THROW(bateman_horn_H(PolyZ({-4, 0, 1})), Error);
    EXPECT_TRUE(bateman_horn_H(PolyZ({1, 1, 0, 1}), 1000).irreducibility_assumed);
}

TEST(BatemanHorn, EulerPolynomialIsTwiceC)
{
    const auto h = bateman_horn_H(PolyZ({41, 1, 1}));
    EXPECT_NEAR(h.density.value, 2 * hl_constant(-163).value, h.density.tail_bound);
}

TEST(RootCount, MatchesEnumeration)
{
    std::mt19937_64 rng(202);
    for (int i = 0; i < 100; ++i) {
        const QuadraticPoly f(1 + static_cast<i128>(rng() % 60), static_cast<i128>(rng() % 121) - 60,
                              static_cast<i128>(rng() % 121) - 60);
        for (u64 p : oracle::sieve(199))
            ASSERT_EQ(quadratic_root_count(f, p), poly::count_roots_mod(f.to_poly(), p)) << poly::format(f) << " " << p;
    }
}
