#include "qprim/criteria.hpp"

#include "qprim/arith.hpp"
#include "qprim/charsums.hpp"
#include "qprim/error.hpp"
#include "qprim/parallel.hpp"

#include <mutex>
#include <numeric>

namespace qprim::criteria {

namespace {

constexpr i128 kLehmerBases[] = {-163, -3, 6, 326};
constexpr u64 kPrimorial37 = 2ULL * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23 * 29 * 31 * 37;

[[noreturn]] void violation(const std::string& what)
{
    throw Error(ErrorKind::lemma_violation, what);
}

template <class Check>
ScanReport run_scan(std::string mode, u64 lo, u64 hi, unsigned workers, Check&& check)
{
    ScanReport rep;
    rep.mode = std::move(mode);
    rep.lo = lo;
    rep.hi = hi;
    if (hi < lo)
        return rep;
    std::mutex mu;
    const u64 chunk = 4096;
    const u64 chunks = (hi - lo) / chunk + 1;
    parallel_for(chunks, workers, [&](std::uint64_t c) {
        const u64 a = lo + c * chunk;
        const u64 b = std::min(hi, a + chunk - 1);
        std::uint64_t checked = 0, applicable = 0;
        std::vector<std::string> bad;
        for (u64 x = a; x <= b; ++x) {
            ++checked;
            try {
                if (check(x))
                    ++applicable;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::lemma_violation)
                    throw;
                ++applicable;
                bad.emplace_back(e.what());
            }
        }
        std::lock_guard lock(mu);
        rep.checked += checked;
        rep.applicable += applicable;
        rep.counterexamples.insert(rep.counterexamples.end(), bad.begin(), bad.end());
    });
    return rep;
}

} // namespace

BaseDecomposition decompose(i128 g)
{
    if (!charsums::in_base_set(g))
        throw Error(ErrorKind::invalid_base, "g=" + to_string(g) + " is -1 or a perfect square");
    const auto split = arith::squarefree_split(g);
    BaseDecomposition b;
    b.g = g;
    b.g0 = split.root;
    b.g1 = split.squarefree;
    b.g2 = b.g1 % 2 != 0 ? abs128(b.g1) : abs128(b.g1 / 2);
    return b;
}

std::vector<u64> lemma1_excluded(int alpha, i128 d1, i128 d2, u64 q_max)
{
    if (alpha < 0 || d1 <= 0 || d2 <= 0)
        throw Error(ErrorKind::invalid_input, "lemma1_excluded expects alpha >= 0 and positive d1, d2");
    const i128 m = -checked_mul(d1, d2);
    std::vector<u64> out;
    for (u64 q : arith::primes_up_to(q_max)) {
        if (q == 2 || d2 % static_cast<i128>(q) == 0)
            continue;
        if (arith::kronecker(m, q) != 1)
            out.push_back(q);
    }
    return out;
}

bool prop2_check(i128 k, i64 n_cap)
{
    if (k == 0)
        throw Error(ErrorKind::invalid_input, "k must be nonzero");
    const i128 k2 = k * k;
    for (i64 n = 0; n <= n_cap; ++n) {
        const i128 v = checked_add(checked_mul(326, checked_mul(n, n)), 3);
        if (!arith::is_prime_wide(v))
            continue;
        const u64 p = static_cast<u64>(v);
        if (arith::reduce_mod(checked_mul(326, k), p) == 0)
            continue;
        const auto fact = arith::factor(p - 1);
        for (i128 g : kLehmerBases) {
            const i128 kg = checked_mul(k2, g);
            if (arith::reduce_mod(kg, p) == 0)
                continue;
            const u64 r = arith::residual_index(kg, p, fact);
            if (std::gcd(r, kPrimorial37) != 1)
                return false;
        }
    }
    return true;
}

bool chebyshev_classic(u64 p1)
{
    if (p1 % 4 != 1 || !arith::is_prime(p1) || p1 > (~u64{0} - 1) / 2)
        return false;
    const u64 p2 = 2 * p1 + 1;
    if (!arith::is_prime(p2))
        return false;
    if (!arith::is_primitive_root(2, p2))
        violation("2 is not a primitive root mod " + std::to_string(p2) + " (p1=" + std::to_string(p1) + ")");
    return true;
}

u64 find_a(i128 g2)
{
    if (g2 < 3 || g2 % 2 == 0 || !arith::is_squarefree(g2))
        throw Error(ErrorKind::invalid_input, "find_a expects an odd squarefree g2 >= 3");
    // (8a+1 / g2) and gcd(a, g2) depend only on a mod g2.
    for (i128 a = 1; a <= g2; ++a) {
        if (std::gcd(a, g2) != 1)
            continue;
        if (arith::jacobi(8 * a + 1, g2) == -1)
            return static_cast<u64>(a);
    }
    throw Error(ErrorKind::contradiction, "no a modulo " + to_string(g2) + " with ((8a+1)/g2) = -1");
}

bool extended_chebyshev(i128 g, u64 p1)
{
    const BaseDecomposition b = decompose(g);
    if (!arith::is_prime(p1))
        return false;
    const auto report = [&](u64 p2) {
        violation("g=" + to_string(g) + " is not a primitive root mod " + std::to_string(p2) +
                  " (p1=" + std::to_string(p1) + ")");
    };
    if (b.g1 == 2 || b.g1 == -2) {
        const u64 want = g > 0 ? 1 : 3;
        if (p1 % 4 != want || p1 > (~u64{0} - 1) / 2)
            return false;
        const u64 p2 = 2 * p1 + 1;
        if (!arith::is_prime(p2))
            return false;
        const u64 gm = arith::reduce_mod(g, p2);
        const u64 sq = arith::mulmod(gm, gm, p2);
        if (sq == 0 || sq == 1)
            return false;
        if (!arith::is_primitive_root(g, p2))
            report(p2);
        return true;
    }
    if (b.g2 < 3)
        return false;  // g1 = -1: no a exists
    const u64 a = find_a(b.g2);
    if (static_cast<i128>(p1 % static_cast<u64>(b.g2)) != static_cast<i128>(a % static_cast<u64>(b.g2)))
        return false;
    if (p1 > (~u64{0} - 1) / 8)
        return false;
    const u64 p2 = 8 * p1 + 1;
    if (!arith::is_prime(p2))
        return false;
    const u64 g8 = arith::powmod(arith::reduce_mod(g, p2), 8, p2);
    if (g8 == 0 || g8 == 1)
        return false;
    if (!arith::is_primitive_root(g, p2))
        report(p2);
    return true;
}

std::optional<bool> fueter_check(u64 p)
{
    if (p < 3 || !arith::is_prime(p) || p > (~u64{0} - 1) / 6)
        return std::nullopt;
    const u64 q = 6 * p + 1;
    if (!arith::is_prime(q))
        return std::nullopt;
    const bool not_primitive = !arith::is_primitive_root(3, q);
    // The representation is of 4q; with 4p the two sides disagree from p = 11 on.
    bool represented = false;
    const u128 four_q = static_cast<u128>(4) * q;
    for (u128 m = 0; 243 * m * m <= four_q; ++m) {
        if (is_perfect_square(static_cast<i128>(four_q - 243 * m * m))) {
            represented = true;
            break;
        }
    }
    return not_primitive == represented;
}

bool verify_construction(i128 A1, i128 C1, i64 N, std::span<const i128> bases)
{
    if (N < 1)
        throw Error(ErrorKind::invalid_input, "N must be at least 1");
    for (i64 n = 1; n <= N; ++n) {
        const i128 v = checked_add(checked_mul(A1, checked_mul(n, n)), C1);
        if (!arith::is_prime_wide(v))
            return false;
        const u64 p = static_cast<u64>(v);
        for (i128 g : bases) {
            if (arith::reduce_mod(g, p) == 0 || !arith::is_primitive_root(g, p))
                return false;
        }
    }
    return true;
}

ScanReport scan_classic(u64 hi, unsigned workers)
{
    return run_scan("classic", 2, hi, workers, [](u64 p1) { return chebyshev_classic(p1); });
}

ScanReport scan_extended(i128 g, u64 hi, unsigned workers)
{
    decompose(g);
    return run_scan("extended g=" + to_string(g), 2, hi, workers,
                    [g](u64 p1) { return extended_chebyshev(g, p1); });
}

ScanReport scan_fueter(u64 hi, unsigned workers)
{
    return run_scan("fueter", 3, hi, workers, [](u64 p) {
        const auto r = fueter_check(p);
        if (!r)
            return false;
        if (!*r)
            violation("criterion disagrees at p=" + std::to_string(p));
        return true;
    });
}

ScanReport scan_lemma1(i64 n_cap)
{
    // 326n^2 + 3 = 2 * 163 n^2 + 2 * 1 + 1
    const auto excluded = lemma1_excluded(1, 163, 1, 37);
    u64 qprod = 1;
    for (u64 q : excluded)
        qprod *= q;
    return run_scan("lemma1", 0, static_cast<u64>(n_cap), 1, [qprod](u64 n) {
        const i128 v = checked_add(checked_mul(326, checked_mul(static_cast<i128>(n), n)), 3);
        if (!arith::is_prime_wide(v))
            return false;
        const u64 p = static_cast<u64>(v);
        const auto fact = arith::factor(p - 1);
        for (i128 g : kLehmerBases) {
            if (arith::reduce_mod(g, p) == 0)
                continue;
            const u64 r = arith::residual_index(g, p, fact);
            if (std::gcd(r, qprod) != 1)
                violation("p=" + std::to_string(p) + " g=" + to_string(g) + " r=" + std::to_string(r));
        }
        return true;
    });
}

ScanReport scan_prop2(i64 k_max, i64 n_cap, unsigned workers)
{
    return run_scan("prop2", 1, static_cast<u64>(k_max), workers, [n_cap](u64 k) {
        if (!prop2_check(static_cast<i128>(k), n_cap))
            violation("residual index shares a prime <= 37 for k=" + std::to_string(k));
        return true;
    });
}

} // namespace qprim::criteria
