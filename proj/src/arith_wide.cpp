#include "qprim/arith.hpp"
#include "qprim/error.hpp"

#include <gmp.h>

namespace qprim::arith {

namespace {

class Mpz {
public:
    Mpz() { mpz_init(v_); }
    explicit Mpz(u128 x) : Mpz() { set(x); }
    Mpz(const Mpz&) = delete;
    Mpz& operator=(const Mpz&) = delete;
    ~Mpz() { mpz_clear(v_); }

    void set(u128 x)
    {
        const u64 limbs[2] = {static_cast<u64>(x), static_cast<u64>(x >> 64)};
        mpz_import(v_, 2, -1, sizeof(u64), 0, 0, limbs);
    }

    u128 get() const
    {
        u64 limbs[2] = {0, 0};
        std::size_t count = 0;
        mpz_export(limbs, &count, -1, sizeof(u64), 0, 0, v_);
        return (static_cast<u128>(limbs[1]) << 64) | limbs[0];
    }

    mpz_ptr get_mpz() { return v_; }
    mpz_srcptr get_mpz() const { return v_; }

private:
    mpz_t v_;
};

} // namespace

u128 powmod_wide(u128 base, u128 exp, u128 m)
{
    if (m == 0)
        throw Error(ErrorKind::invalid_modulus, "modulus must be positive");
    Mpz b(base), e(exp), mod(m), r;
    mpz_powm(r.get_mpz(), b.get_mpz(), e.get_mpz(), mod.get_mpz());
    return r.get();
}

bool is_prime_u128(u128 n)
{
    if (n <= ~u64{0})
        return is_prime(static_cast<u64>(n));
    if (n >= kWidePrimeLimit)
        throw Error(ErrorKind::unsupported_magnitude, "deterministic primality limit exceeded: " + to_string(n));
    static constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (u64 p : kBases)
        if (n % p == 0)
            return false;
    u128 d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    Mpz mod(n), dd(d), nm1(n - 1), x, b;
    for (u64 a : kBases) {
        b.set(a);
        mpz_powm(x.get_mpz(), b.get_mpz(), dd.get_mpz(), mod.get_mpz());
        if (mpz_cmp_ui(x.get_mpz(), 1) == 0 || mpz_cmp(x.get_mpz(), nm1.get_mpz()) == 0)
            continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            mpz_mul(x.get_mpz(), x.get_mpz(), x.get_mpz());
            mpz_mod(x.get_mpz(), x.get_mpz(), mod.get_mpz());
            if (mpz_cmp(x.get_mpz(), nm1.get_mpz()) == 0) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

u128 reduce_mod_wide(i128 g, u128 m)
{
    if (g >= 0)
        return static_cast<u128>(g) % m;
    const u128 r = static_cast<u128>(-(g + 1)) % m;  // avoids negating INT128_MIN
    return r == m - 1 ? 0 : m - 1 - r;
}

u128 multiplicative_order_wide(i128 g, u128 p, const Factorization& p_minus_1)
{
    if (p < 2)
        throw Error(ErrorKind::invalid_modulus, "modulus must be prime");
    const u128 gm = reduce_mod_wide(g, p);
    if (gm == 0)
        throw Error(ErrorKind::invalid_base, "p divides g");
    u128 order = p - 1;
    for (const auto& pp : p_minus_1.factors) {
        for (int i = 0; i < pp.exponent; ++i) {
            if (powmod_wide(gm, order / pp.prime, p) != 1)
                break;
            order /= pp.prime;
        }
    }
    return order;
}

u128 residual_index_wide(i128 g, u128 p)
{
    if (p <= ~u64{0})
        return residual_index(g, static_cast<u64>(p));
    return (p - 1) / multiplicative_order_wide(g, p, factor_wide(p - 1));
}

bool is_primitive_root_wide(u128 g, u128 p, std::span<const u64> primes_of_p_minus_1)
{
    if (p <= ~u64{0})
        return is_primitive_root_reduced(static_cast<u64>(g), static_cast<u64>(p), primes_of_p_minus_1);
    for (u64 q : primes_of_p_minus_1)
        if (powmod_wide(g, (p - 1) / q, p) == 1)
            return false;
    return true;
}

GroupOrderPrimes group_order_primes_wide(u128 p)
{
    if (p <= ~u64{0})
        return group_order_primes(static_cast<u64>(p));
    GroupOrderPrimes out;
    for (const auto& pp : factor_wide(p - 1).factors) {
        if (out.count == static_cast<int>(out.primes.size()))
            throw Error(ErrorKind::unsupported_magnitude, "too many prime factors in p - 1");
        out.primes[static_cast<std::size_t>(out.count++)] = pp.prime;
    }
    return out;
}

} // namespace qprim::arith
