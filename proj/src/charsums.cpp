#include "qprim/charsums.hpp"

#include "qprim/arith.hpp"
#include "qprim/error.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

namespace qprim::charsums {

using arith::kronecker;
using poly::PolyZ;
using poly::QuadraticPoly;

namespace {

void require_odd_prime(u64 p)
{
    if (p < 3 || !arith::is_prime(p))
        throw Error(ErrorKind::invalid_modulus, "expected an odd prime, got " + to_string(static_cast<u128>(p)));
}

i128 imod(i128 a, i128 m)
{
    const i128 r = a % m;
    return r < 0 ? r + m : r;
}

Rational a_p_for(const PolyZ& f, u64 p)
{
    if (f.degree() == 2)
        return a_p_local(QuadraticPoly::from_poly(f), p);
    return a_p_brute(f, p);
}

} // namespace

bool is_fundamental(i128 D)
{
    if (D == 0 || D == 1)
        return false;
    const i128 r4 = imod(D, 4);
    if (r4 == 1)
        return arith::is_squarefree(D);
    if (r4 != 0)
        return false;
    const i128 m = D / 4;
    const i128 m4 = imod(m, 4);
    return (m4 == 2 || m4 == 3) && arith::is_squarefree(m);
}

FundamentalDiscriminant make_discriminant(i128 D)
{
    if (!is_fundamental(D))
        throw Error(ErrorKind::invalid_discriminant, to_string(D) + " is not a fundamental discriminant");
    i128 odd = abs128(D);
    while ((odd & 1) == 0)
        odd >>= 1;
    return {D, odd};
}

bool in_base_set(i128 g)
{
    return g != -1 && !is_perfect_square(g);
}

FundamentalDiscriminant fundamental_discriminant(i128 g)
{
    if (!in_base_set(g))
        throw Error(ErrorKind::invalid_base, to_string(g) + " is -1 or a perfect square");
    const i128 g1 = arith::squarefree_split(g).squarefree;
    return make_discriminant(imod(g1, 4) == 1 ? g1 : 4 * g1);
}

i128 jacobsthal_sum(i128 a, u64 p)
{
    require_odd_prime(p);
    return imod(a, p) == 0 ? static_cast<i128>(p) - 1 : -1;
}

i128 t_sum(const QuadraticPoly& f, u64 p)
{
    require_odd_prime(p);
    const i128 P = p;
    const bool p_a = imod(f.a(), P) == 0;
    const bool p_d = imod(f.d(), P) == 0;
    if (!p_a && !p_d)
        return -kronecker(f.a(), P);
    if (p_a && p_d)
        return P * kronecker(f.c(), P);
    return (P - 1) * kronecker(f.a(), P);
}

i128 t_sum_brute(const PolyZ& f, u64 p)
{
    require_odd_prime(p);
    i128 sum = 0;
    for (u64 m = 0; m < p; ++m)
        sum += kronecker(poly::eval_mod(f, m, p), p);
    return sum;
}

Rational a_p_local(const QuadraticPoly& f, u64 p)
{
    require_odd_prime(p);
    const i128 P = p;
    const bool p_a = imod(f.a(), P) == 0;
    const bool p_d = imod(f.d(), P) == 0;
    if (!p_a && !p_d)
        return Rational(-kronecker(f.a(), P), P - 1 - kronecker(f.d(), P));
    if (p_a && !p_d)
        return 0;
    if (!p_a)
        return kronecker(f.a(), P);
    return kronecker(f.c(), P);
}

Rational a_p_brute(const PolyZ& f, u64 p)
{
    require_odd_prime(p);
    i128 sum = 0;
    i128 allowable = 0;
    for (u64 r = 0; r < p; ++r) {
        const u64 v = poly::eval_mod(f, r, p);
        if (v == 0)
            continue;
        ++allowable;
        sum += kronecker(v, p);
    }
    if (allowable == 0)
        throw Error(ErrorKind::degenerate_denominator, "every value of f is divisible by " + to_string(static_cast<u128>(p)));
    return {sum, allowable};
}

Rational a_d_global(const QuadraticPoly& f, i128 d)
{
    if (d <= 1 || (d & 1) == 0 || !arith::is_squarefree(d))
        throw Error(ErrorKind::invalid_modulus, "a_d needs odd squarefree d > 1, got " + to_string(d));
    Rational result = 1;
    for (const auto& pp : arith::factor_wide(static_cast<u128>(d)).factors)
        result *= a_p_local(f, pp.prime);
    return result;
}

Rational a_d_enumerated(const PolyZ& f, u64 d)
{
    if (d <= 1 || (d & 1) == 0 || !arith::is_squarefree(d))
        throw Error(ErrorKind::invalid_modulus, "a_d needs odd squarefree d > 1");
    i128 sum = 0;
    i128 allowable = 0;
    for (u64 r = 0; r < d; ++r) {
        const u64 v = poly::eval_mod(f, r, d);
        if (std::gcd(v, d) != 1)
            continue;
        ++allowable;
        sum += arith::jacobi(v, d);
    }
    if (allowable == 0)
        throw Error(ErrorKind::degenerate_denominator, "no allowable residue classes");
    return {sum, allowable};
}

Rational a_d_closed_form(const QuadraticPoly& f, i128 d)
{
    if (d <= 1 || (d & 1) == 0 || !arith::is_squarefree(d))
        throw Error(ErrorKind::invalid_modulus, "a_d needs odd squarefree d > 1");
    const i128 da = gcd(d, f.a());
    if (imod(f.d(), da) != 0)
        return 0;
    const i128 dad = gcd(da, f.d());
    Rational result(arith::jacobi(f.c(), dad) * arith::jacobi(f.a(), d / da));
    for (const auto& pp : arith::factor_wide(static_cast<u128>(d)).factors) {
        const i128 q = pp.prime;
        if (imod(f.a(), q) == 0 || imod(f.d(), q) == 0)
            continue;
        result *= Rational(-1, q - 1 - kronecker(f.d(), q));
    }
    return result;
}

Rational tau_minus(const PolyZ& f, const FundamentalDiscriminant& D)
{
    if (!is_fundamental(D.D))
        throw Error(ErrorKind::invalid_discriminant, to_string(D.D) + " is not a fundamental discriminant");
    if (D.odd_part <= 1)
        throw Error(ErrorKind::no_odd_prime_divisor, "discriminant " + to_string(D.D) + " has no odd prime divisor");
    Rational a = 1;
    for (const auto& pp : arith::factor_wide(static_cast<u128>(D.odd_part)).factors)
        a *= a_p_for(f, pp.prime);
    const Rational half(1, 2);
    if ((D.D & 1) != 0)
        return (Rational(1) - a) * half;
    const poly::Mod8Profile al = poly::mod8_profile(f);
    // Negative D are reduced arithmetically into [0, 32).
    const i128 r32 = imod(D.D, 32);
    Rational weight;
    if (r32 % 8 == 4)
        weight = al.alpha3 + al.alpha7 - al.alpha1 - al.alpha5;
    else if (r32 == 8)
        weight = al.alpha3 + al.alpha5 - al.alpha1 - al.alpha7;
    else if (r32 == 24)
        weight = al.alpha5 + al.alpha7 - al.alpha1 - al.alpha3;
    else
        throw Error(ErrorKind::invalid_discriminant, "unexpected 2-adic class for " + to_string(D.D));
    return (Rational(1) + weight * a) * half;
}

std::vector<FundamentalDiscriminant> admissible_discriminants(const QuadraticPoly& f, i128 bound)
{
    // Odd primes dividing 24ad: 3 plus the odd primes of a and d.
    std::vector<u64> odd_primes{3};
    for (i128 part : {f.a(), f.d()}) {
        if (part == 0)
            continue;
        for (const auto& pp : arith::factor_wide(static_cast<u128>(abs128(part))).factors)
            if (pp.prime != 2)
                odd_primes.push_back(pp.prime);
    }
    std::sort(odd_primes.begin(), odd_primes.end());
    odd_primes.erase(std::unique(odd_primes.begin(), odd_primes.end()), odd_primes.end());
    if (odd_primes.size() > 30)
        throw Error(ErrorKind::unsupported_magnitude, "too many prime divisors of 24ad to enumerate");

    const i128 limit = bound > 0 ? bound : std::numeric_limits<i128>::max();
    const PolyZ fp = f.to_poly();
    std::vector<FundamentalDiscriminant> out;
    std::function<void(std::size_t, i128)> walk = [&](std::size_t i, i128 odd) {
        if (i == odd_primes.size()) {
            if (odd == 1)
                return;
            for (i128 two : {1, 4, 8})
                for (i128 sign : {1, -1}) {
                    const i128 D = sign * two * odd;
                    if (abs128(D) > limit || !is_fundamental(D))
                        continue;
                    const auto fd = make_discriminant(D);
                    if (tau_minus(fp, fd) == Rational(1))
                        out.push_back(fd);
                }
            return;
        }
        walk(i + 1, odd);
        const i128 next = odd * static_cast<i128>(odd_primes[i]);
        if (next <= limit)
            walk(i + 1, next);
    };
    walk(0, 1);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.D < y.D; });
    return out;
}

} // namespace qprim::charsums
