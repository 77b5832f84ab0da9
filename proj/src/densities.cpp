#include "qprim/densities.hpp"

#include "qprim/arith.hpp"
#include "qprim/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <limits>
#include <numbers>
#include <random>

namespace qprim::densities {

using arith::kronecker;
using charsums::FundamentalDiscriminant;
using poly::PolyZ;
using poly::QuadraticPoly;

namespace {

using Real = long double;

constexpr Real kPi = std::numbers::pi_v<long double>;
constexpr Real kZeta2 = kPi * kPi / 6;
constexpr Real kZeta4 = kPi * kPi * kPi * kPi / 90;
constexpr u64 kMaxLModulus = 100000000;

// B_2, B_4, ..., B_16.
constexpr Real kBernoulli[] = {1.0L / 6,  -1.0L / 30,   1.0L / 42, -1.0L / 30,
                               5.0L / 66, -691.0L / 2730, 7.0L / 6,  -3617.0L / 510};
constexpr int kEulerMaclaurinTerms = 7;
constexpr Real kShift = 10;

// Upper bound for sum_{p > x} 1/p^2 over primes, from pi(t) < 1.25506 t / log t.
Real prime_tail_inverse_square(Real x)
{
    return 2.52L / (x * std::log(x));
}

// psi(x) for x > 0; *err receives a bound on the truncation error.
Real digamma(Real x, Real* err)
{
    Real acc = 0;
    while (x < kShift) {
        acc -= 1 / x;
        x += 1;
    }
    const Real inv2 = 1 / (x * x);
    Real pow = inv2;
    Real series = std::log(x) - 1 / (2 * x);
    for (int k = 1; k <= kEulerMaclaurinTerms; ++k) {
        series -= kBernoulli[k - 1] / (2 * k) * pow;
        pow *= inv2;
    }
    *err = std::fabs(kBernoulli[kEulerMaclaurinTerms] / (2 * (kEulerMaclaurinTerms + 1)) * pow);
    return acc + series;
}

// Hurwitz zeta(2, x) for x > 0.
Real hurwitz2(Real x, Real* err)
{
    Real acc = 0;
    while (x < kShift) {
        acc += 1 / (x * x);
        x += 1;
    }
    const Real inv = 1 / x;
    const Real inv2 = inv * inv;
    Real pow = inv2 * inv;  // x^{-3}
    Real series = inv + inv2 / 2;
    for (int k = 1; k <= kEulerMaclaurinTerms; ++k) {
        series += kBernoulli[k - 1] * pow;
        pow *= inv2;
    }
    *err = std::fabs(kBernoulli[kEulerMaclaurinTerms] * pow);
    return acc + series;
}

int chi(i128 D, u64 q)
{
    return kronecker(D, static_cast<i128>(q));
}

void require_cutoff(u64 cutoff)
{
    if (cutoff < 17)
        throw Error(ErrorKind::invalid_input, "product cutoff must be at least 17");
}

i128 imod(i128 a, i128 m)
{
    const i128 r = a % m;
    return r < 0 ? r + m : r;
}

// Product over the primes of |D| of (1 - q^{-e}).
Real ramified_factor(i128 D, int e)
{
    Real out = 1;
    for (const auto& pp : arith::factor_wide(static_cast<u128>(abs128(D))).factors)
        out *= 1 - std::pow(static_cast<Real>(pp.prime), static_cast<Real>(-e));
    return out;
}

DensityReport report(Real value, u64 cutoff, Real tail, Method m)
{
    return {static_cast<double>(value), cutoff, static_cast<double>(tail), m};
}

// Per-prime factor counts (#{f = 0}, #{f = 1}) for the delta product.
struct Counts {
    u64 zero;
    u64 one;
};

Counts quadratic_counts(const QuadraticPoly& f, i128 d_shift, u64 q)
{
    const i128 Q = q;
    if (imod(f.a(), Q) != 0)
        return {static_cast<u64>(1 + kronecker(f.d(), Q)), static_cast<u64>(1 + kronecker(d_shift, Q))};
    if (imod(f.b(), Q) != 0)
        return {1, 1};
    return {imod(f.c(), Q) == 0 ? q : 0, imod(f.c() - 1, Q) == 0 ? q : 0};
}

} // namespace

std::string_view to_string(Method m)
{
    return m == Method::direct ? "direct" : "accelerated";
}

LValue L_chi(int s, const FundamentalDiscriminant& D, double tol)
{
    if (s != 1 && s != 2)
        throw Error(ErrorKind::invalid_input, "L-values are provided for s = 1 and s = 2 only");
    if (!charsums::is_fundamental(D.D))
        throw Error(ErrorKind::invalid_discriminant, qprim::to_string(D.D) + " is not fundamental");
    if (!(tol > 0))
        throw Error(ErrorKind::invalid_input, "tolerance must be positive");
    const i128 mod = abs128(D.D);
    if (mod > static_cast<i128>(kMaxLModulus))
        throw Error(ErrorKind::unsupported_magnitude, "L-value modulus beyond 1e8: " + qprim::to_string(D.D));
    const u64 q = static_cast<u64>(mod);
    const Real qr = static_cast<Real>(q);

    Real sum = 0;
    Real abs_sum = 0;
    Real trunc = 0;
    for (u64 a = 1; a < q; ++a) {
        const int c = chi(D.D, a);
        if (c == 0)
            continue;
        Real err = 0;
        const Real x = static_cast<Real>(a) / qr;
        const Real v = s == 1 ? digamma(x, &err) : hurwitz2(x, &err);
        sum += c * v;
        abs_sum += std::fabs(v);
        trunc += err;
    }
    const Real scale = s == 1 ? qr : qr * qr;
    const Real value = (s == 1 ? -sum : sum) / scale;
    // Truncation remainders plus a generous rounding allowance (about 64 ulps per term).
    const Real rounding = 64 * std::numeric_limits<Real>::epsilon() * abs_sum / scale;
    const Real error = trunc / scale + rounding;
    if (error > tol)
        throw Error(ErrorKind::precision_exceeded,
                    "requested tolerance below attainable error " + std::to_string(static_cast<double>(error)));
    return {s, D, value, static_cast<double>(error)};
}

DensityReport hl_constant(i128 Delta, double tol, u64 cutoff)
{
    if (Delta >= 0 || imod(Delta, 8) != 5)
        throw Error(ErrorKind::invalid_discriminant, "C(Delta) needs Delta < 0 with Delta = 5 mod 8");
    const FundamentalDiscriminant D = charsums::make_discriminant(Delta);
    const LValue l1 = L_chi(1, D, tol / 16);
    const LValue l2 = L_chi(2, D, tol / 16);
    Real value = kZeta4 / (2 * l1.value * l2.value) * ramified_factor(Delta, 4);
    if (cutoff == 0) {
        // Split-product tail is at most value / (X - 2)^2.
        cutoff = static_cast<u64>(std::ceil(std::sqrt(4 * value / tol))) + 3;
        cutoff = std::max<u64>(cutoff, 1000);
    }
    require_cutoff(cutoff);
    for (u64 q : arith::primes_up_to(cutoff)) {
        if (q == 2 || chi(Delta, q) != 1)
            continue;
        const Real qr = static_cast<Real>(q);
        value *= 1 - 2 / (qr * (qr - 1) * (qr - 1));
    }
    const Real x = static_cast<Real>(cutoff);
    const Real tail = value / ((x - 2) * (x - 2)) +
                      value * (l1.abs_error / l1.value + l2.abs_error / l2.value);
    return report(value, cutoff, tail, Method::accelerated);
}

DensityReport hl_constant_direct(i128 Delta, u64 cutoff)
{
    require_cutoff(cutoff);
    Real value = 1;
    for (u64 q : arith::primes_up_to(cutoff)) {
        if (q == 2)
            continue;
        value *= 1 - chi(Delta, q) / static_cast<Real>(q - 1);
    }
    // Heuristic: the tail behaves like a partial sum of chi(q)/q beyond the cutoff.
    const Real x = static_cast<Real>(cutoff);
    const Real tail = value * std::log(static_cast<Real>(abs128(Delta)) * x) / std::sqrt(x);
    return report(value, cutoff, tail, Method::direct);
}

DensityReport euler_product_s(int s, const FundamentalDiscriminant& D, double tol, u64 cutoff)
{
    require_cutoff(cutoff);
    const LValue l = L_chi(s, D, tol / 4);
    const Real eps = 1 + std::pow(2.0L, static_cast<Real>(-s)) * chi(D.D, 2);
    const Real zeta2s = s == 1 ? kZeta2 : kZeta4;
    Real value = eps * zeta2s / l.value * ramified_factor(D.D, 2 * s);
    for (u64 q : arith::primes_up_to(cutoff)) {
        if (q == 2 || chi(D.D, q) != 1)
            continue;
        const Real qs = std::pow(static_cast<Real>(q), static_cast<Real>(s));
        value *= 1 - 2 / (qs * (qs - 1));
    }
    const Real x = static_cast<Real>(cutoff);
    const Real split_tail = s == 1 ? 2 / x : 1 / (x * x * x);
    const Real tail = value * (split_tail + l.abs_error / l.value);
    return report(value, cutoff, tail, Method::accelerated);
}

DensityReport euler_product_direct(int s, const FundamentalDiscriminant& D, u64 cutoff)
{
    if (s != 1 && s != 2)
        throw Error(ErrorKind::invalid_input, "s must be 1 or 2");
    require_cutoff(cutoff);
    Real value = 1;
    for (u64 q : arith::primes_up_to(cutoff)) {
        if (q == 2)
            continue;
        const Real qs = std::pow(static_cast<Real>(q), static_cast<Real>(s));
        value *= 1 - chi(D.D, q) / (qs - 1);
    }
    const Real x = static_cast<Real>(cutoff);
    const Real tail = s == 2 ? value * 1.01L * prime_tail_inverse_square(x)
                             : value * std::log(static_cast<Real>(abs128(D.D)) * x) / std::sqrt(x);
    return report(value, cutoff, tail, Method::direct);
}

u64 quadratic_root_count(const QuadraticPoly& f, u64 p)
{
    if (p == 2)
        return poly::count_roots_mod(f.to_poly(), 2);
    const i128 P = p;
    if (imod(f.a(), P) != 0)
        return static_cast<u64>(1 + kronecker(f.d(), P));
    if (imod(f.b(), P) != 0)
        return 1;
    return imod(f.c(), P) == 0 ? p : 0;
}

DensityReport delta(const PolyZ& f, u64 cutoff, bool accelerate)
{
    require_cutoff(cutoff);
    const int deg = f.degree();
    if (deg < 1)
        throw Error(ErrorKind::invalid_input, "delta needs a nonconstant polynomial");
    const bool quadratic = deg == 2;
    if (accelerate && !quadratic)
        throw Error(ErrorKind::invalid_input, "tail acceleration is implemented for quadratics only");

    std::optional<QuadraticPoly> qf;
    i128 d_shift = 0;  // discriminant of f - 1
    if (quadratic) {
        qf = QuadraticPoly::from_poly(f);
        d_shift = checked_add(checked_mul(qf->b(), qf->b()), -checked_mul(4 * qf->a(), qf->c() - 1));
    }

    Real value = 1;
    Real all_inverse_square = 1;  // prod_{q <= X} (1 - 1/q^2), all primes
    for (u64 q : arith::primes_up_to(cutoff)) {
        const Real qr = static_cast<Real>(q);
        all_inverse_square *= 1 - 1 / (qr * qr);
        if (q == 2)
            continue;
        Counts c{};
        if (quadratic) {
            c = quadratic_counts(*qf, d_shift, q);
        } else if (deg == 1) {
            const u64 a = arith::reduce_mod(f.coefficient(1), q);
            const u64 b = arith::reduce_mod(f.coefficient(0), q);
            if (a != 0)
                c = {1, 1};
            else
                c = {b == 0 ? q : 0, b == 1 ? q : 0};
        } else
            c = {poly::count_roots_mod(f, q), poly::count_residue_class(f, q, 1)};
        if (c.zero == q)
            throw Error(ErrorKind::degenerate, "every value of f is divisible by " + std::to_string(q));
        value *= 1 - static_cast<Real>(c.one) / (qr * static_cast<Real>(q - c.zero));
    }

    const Real x = static_cast<Real>(cutoff);
    if (!accelerate) {
        const Real tail = value * deg * (x / (x - deg)) * prime_tail_inverse_square(x);
        return report(value, cutoff, tail, Method::direct);
    }

    // Generic factor beyond the cutoff: 1 - (1 + chi'(q))/q^2 = (1 - 1/q^2)(1 - chi'(q)/(q^2 - 1)),
    // chi' the character of the discriminant of f - 1.
    Real tail_factor = (1 / kZeta2) / all_inverse_square;
    Real unresolved = 0;
    bool resolved = false;
    if (d_shift != 0) {
        try {
            const i128 core = arith::squarefree_split(d_shift).squarefree;
            const i128 fund = imod(core, 4) == 1 ? core : 4 * core;
            if (fund == 1) {
                // Principal character: L(2, chi) = zeta(2) and epsilon(2) = 5/4.
                Real full = (5.0L / 4) * kZeta4 / kZeta2;
                Real partial = 1;
                for (u64 q : arith::primes_up_to(cutoff)) {
                    if (q == 2)
                        continue;
                    const Real q2 = static_cast<Real>(q) * static_cast<Real>(q);
                    full *= 1 - 2 / (q2 * (q2 - 1));
                    partial *= 1 - 1 / (q2 - 1);
                }
                tail_factor *= full / partial;
                resolved = true;
            } else if (abs128(fund) <= static_cast<i128>(kMaxLModulus)) {
                const auto D = charsums::make_discriminant(fund);
                const DensityReport full = euler_product_s(2, D, 1e-12, cutoff);
                Real partial = 1;
                for (u64 q : arith::primes_up_to(cutoff)) {
                    if (q == 2)
                        continue;
                    const Real q2 = static_cast<Real>(q) * static_cast<Real>(q);
                    partial *= 1 - chi(fund, q) / (q2 - 1);
                }
                tail_factor *= static_cast<Real>(full.value) / partial;
                unresolved = static_cast<Real>(full.tail_bound) / static_cast<Real>(full.value);
                resolved = true;
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::unsupported_magnitude)
                throw;
        }
    } else {
        resolved = true;  // chi' vanishes identically
    }
    if (!resolved)
        unresolved = 1.01L * prime_tail_inverse_square(x);
    value *= tail_factor;
    const Real tail = value * (8 / (x * x) + unresolved);
    return report(value, cutoff, tail, Method::accelerated);
}

DensityReport delta1(i128 A, i128 B, u64 cutoff)
{
    if (A <= 0)
        throw Error(ErrorKind::invalid_input, "delta1 needs A > 0");
    require_cutoff(cutoff);
    Real value = 1;
    const i128 g = gcd(A, B - 1);
    if (g > 1)
        for (const auto& pp : arith::factor_wide(static_cast<u128>(g)).factors)
            if (pp.prime != 2)
                value *= 1 - 1 / static_cast<Real>(pp.prime);
    const i128 twist = checked_mul(-A, B - 1);
    for (u64 q : arith::primes_up_to(cutoff)) {
        if (q == 2 || imod(A, q) == 0)
            continue;
        const Real qr = static_cast<Real>(q);
        value *= 1 - (1 + chi(twist, q)) / (qr * qr);
    }
    const Real tail = value * 2 * prime_tail_inverse_square(static_cast<Real>(cutoff));
    return report(value, cutoff, tail, Method::direct);
}

DensityReport lehmer_naive(i128 D, u64 cutoff)
{
    require_cutoff(cutoff);
    Real value = 1;
    for (u64 q : arith::primes_up_to(cutoff)) {
        if (chi(D, q) != 1)
            continue;
        const Real qr = static_cast<Real>(q);
        value *= 1 - 2 / (qr * qr);
    }
    const Real tail = value * 2 * prime_tail_inverse_square(static_cast<Real>(cutoff));
    return report(value, cutoff, tail, Method::direct);
}

DensityReport p1_corrected(i128 D, i128 twist, u64 cutoff)
{
    require_cutoff(cutoff);
    Real value = 1;
    for (u64 q : arith::primes_up_to(cutoff)) {
        if (chi(D, q) != 1)
            continue;
        const Real qr = static_cast<Real>(q);
        const Real den = qr * (qr - 1 - chi(twist, q));
        if (den <= 0)
            throw Error(ErrorKind::degenerate, "vanishing factor at q = " + std::to_string(q));
        value *= 1 - 2 / den;
    }
    const Real x = static_cast<Real>(cutoff);
    const Real tail = value * 2 * (x / (x - 2)) * prime_tail_inverse_square(x);
    return report(value, cutoff, tail, Method::direct);
}

DensityReport artin_B(u64 cutoff)
{
    if (cutoff < 2)
        throw Error(ErrorKind::invalid_input, "cutoff must be at least 2");
    Real value = 1;
    for (u64 q : arith::primes_up_to(cutoff)) {
        const Real qm = static_cast<Real>(q - 1);
        value *= 1 + 1 / (qm * qm);
    }
    const Real x = static_cast<Real>(std::max<u64>(cutoff, 17));
    const Real tail = value * std::expm1(1.01L * (x / (x - 2)) * (x / (x - 2)) * prime_tail_inverse_square(x));
    return report(value, cutoff, tail, Method::direct);
}

double q_product(std::span<const u64> primes)
{
    Real value = 1;
    for (u64 p : primes) {
        if (p < 3 || !arith::is_prime(p))
            throw Error(ErrorKind::invalid_input, "q_product expects odd primes, got " + std::to_string(p));
        value *= static_cast<Real>(p - 1) / static_cast<Real>(arith::euler_phi(p - 1));
    }
    return static_cast<double>(value);
}

namespace {

void require_probability(double p1)
{
    if (!(p1 > 0 && p1 < 1))
        throw Error(ErrorKind::invalid_probability, "p1 must lie in (0, 1)");
}

} // namespace

double small_g_exponent_definition(std::uint64_t c)
{
    return static_cast<double>(c) / 3;
}

double small_g_exponent_heuristic(std::uint64_t s)
{
    // B = 2.826419997067...
    return static_cast<double>(s) * std::log10(2.826419997067);
}

double streak_likelihood_exponent(std::uint64_t m)
{
    return -static_cast<double>(m) / 2;
}

double expected_max(double p1, std::uint64_t s)
{
    require_probability(p1);
    if (s == 0)
        throw Error(ErrorKind::invalid_input, "s must be at least 1");
    // M = sum_{j >= 1} (1 - (1 - p1^j)^s), the summed-by-parts form of the defining series.
    const Real lp = std::log(static_cast<Real>(p1));
    const Real sr = static_cast<Real>(s);
    Real sum = 0;
    for (std::uint64_t j = 1;; ++j) {
        const Real pj = std::exp(static_cast<Real>(j) * lp);
        if (sr * pj < 1e-8L) {
            // Closed-form geometric tail; the next omitted term is O((s p^j)^3).
            const Real p = static_cast<Real>(p1);
            sum += sr * pj / (1 - p) - sr * (sr - 1) / 2 * pj * pj / (1 - p * p);
            break;
        }
        sum += -std::expm1(sr * std::log1p(-pj));
    }
    return static_cast<double>(sum);
}

double expected_max_harmonic(double p1, std::uint64_t s)
{
    require_probability(p1);
    Real h = 0;
    if (s <= 10000000) {
        for (std::uint64_t r = s; r >= 1; --r)
            h += 1 / static_cast<Real>(r);
    } else {
        const Real sr = static_cast<Real>(s);
        h = std::log(sr) + std::numbers::egamma_v<long double> + 1 / (2 * sr) - 1 / (12 * sr * sr);
    }
    return static_cast<double>(h / -std::log(static_cast<Real>(p1)) - 0.5L);
}

double expected_max_asymptotic(double p1, std::uint64_t s)
{
    require_probability(p1);
    return std::log(static_cast<double>(s)) / -std::log(p1);
}

MonteCarloEstimate monte_carlo_max(double p1, std::uint64_t s, std::uint64_t trials, std::uint64_t seed)
{
    require_probability(p1);
    if (trials < 100)
        throw Error(ErrorKind::invalid_input, "at least 100 trials are required");
    if (s == 0)
        throw Error(ErrorKind::invalid_input, "s must be at least 1");
    std::mt19937_64 rng(seed);
    // Number of successes before the first failure.
    std::geometric_distribution<std::uint64_t> streak(1 - p1);
    Real sum = 0;
    Real sum_sq = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::uint64_t best = 0;
        for (std::uint64_t i = 0; i < s; ++i)
            best = std::max(best, streak(rng));
        const Real b = static_cast<Real>(best);
        sum += b;
        sum_sq += b * b;
    }
    const Real n = static_cast<Real>(trials);
    const Real mean = sum / n;
    const Real var = (sum_sq - n * mean * mean) / (n - 1);
    return {static_cast<double>(mean), static_cast<double>(std::sqrt(std::max<Real>(var, 0) / n))};
}

BatemanHornReport bateman_horn_H(const PolyZ& f, u64 cutoff)
{
    require_cutoff(cutoff);
    const int deg = f.degree();
    if (deg < 1)
        throw Error(ErrorKind::invalid_input, "H(f) needs a nonconstant polynomial");
    std::optional<QuadraticPoly> qf;
    if (deg == 2) {
        qf = QuadraticPoly::from_poly(f);
        if (is_perfect_square(qf->d()))
            throw Error(ErrorKind::reducible, "square discriminant: " + poly::format(f));
    }
    Real value = 1;
    for (u64 p : arith::primes_up_to(cutoff)) {
        u64 n = 0;
        if (qf)
            n = quadratic_root_count(*qf, p);
        else if (deg == 1)
            n = arith::reduce_mod(f.coefficient(1), p) != 0 ? 1 : (arith::reduce_mod(f.coefficient(0), p) == 0 ? p : 0);
        else
            n = poly::count_roots_mod(f, p);
        const Real pr = static_cast<Real>(p);
        value *= (1 - static_cast<Real>(n) / pr) / (1 - 1 / pr);
    }
    // Heuristic: oscillating first-order terms beyond the cutoff, of size about deg / sqrt(X).
    const Real tail = std::fabs(value) * deg / std::sqrt(static_cast<Real>(cutoff));
    return {report(value, cutoff, tail, Method::direct), deg > 2};
}

} // namespace qprim::densities
