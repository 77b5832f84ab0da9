#pragma once

// Checkable primitive-root criteria: residual-index exclusions for primes of
// the shape 2^a d1 n^2 + 2^a d2 + 1, the Lehmer-instance guarantee, Chebyshev's
// criterion and its extension to every base, Fueter's cubic criterion, and the
// predicate behind the A1 n^2 + C1 construction.

#include "qprim/int128.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qprim::criteria {

struct BaseDecomposition {
    i128 g = 0;
    i128 g0 = 0;  // positive
    i128 g1 = 0;  // squarefree, carries the sign of g
    i128 g2 = 0;  // |g1| for odd g1, |g1/2| otherwise
};

/// Throws invalid-base for g = -1 or g a perfect square.
BaseDecomposition decompose(i128 g);

/// Odd primes q <= q_max with (-d1 d2 / q) != 1 and q not dividing d2.
std::vector<u64> lemma1_excluded(int alpha, i128 d1, i128 d2, u64 q_max);

/// For every prime p = 326n^2+3 with n <= n_cap not dividing 326k, and each
/// g in {-163, -3, 6, 326}: gcd(r_p(k^2 g), 2*3*5*...*37) = 1.
bool prop2_check(i128 k, i64 n_cap);

/// p1 = 1 mod 4 prime and 2p1+1 prime: checks that 2 is a primitive root mod
/// 2p1+1 and returns true. Returns false when the hypotheses fail; throws
/// lemma-violation if they hold and the conclusion does not.
bool chebyshev_classic(u64 p1);

/// Smallest a >= 1 with gcd(a, g2) = 1 and ((8a+1)/g2) = -1, for odd squarefree g2 >= 3.
u64 find_a(i128 g2);

/// The extended criterion for base g at p1 (with a = find_a(g2) when g1 != +-2).
/// Same return and error conventions as chebyshev_classic.
bool extended_chebyshev(i128 g, u64 p1);

/// For an odd prime p with q = 6p+1 prime: whether "3 is not a primitive root
/// mod q" agrees with "4q = n^2 + 243 m^2 is solvable". None when inapplicable.
std::optional<bool> fueter_check(u64 p);

/// True iff A1 n^2 + C1 is prime for n = 1..N and every g in bases is a
/// primitive root modulo each of these primes.
bool verify_construction(i128 A1, i128 C1, i64 N, std::span<const i128> bases);

struct ScanReport {
    std::string mode;
    u64 lo = 0;
    u64 hi = 0;
    std::uint64_t checked = 0;     // candidates examined
    std::uint64_t applicable = 0;  // hypotheses held
    std::vector<std::string> counterexamples;

    bool passed() const { return counterexamples.empty(); }
};

ScanReport scan_classic(u64 hi, unsigned workers = 1);
ScanReport scan_extended(i128 g, u64 hi, unsigned workers = 1);
ScanReport scan_fueter(u64 hi, unsigned workers = 1);

/// Exhaustive check of lemma1_excluded on p = 326n^2+3, n <= n_cap, for the bases
/// {-163, -3, 6, 326}: no excluded q <= 37 divides r_p(g).
ScanReport scan_lemma1(i64 n_cap);

/// prop2_check for k = 1..k_max.
ScanReport scan_prop2(i64 k_max, i64 n_cap, unsigned workers = 1);

} // namespace qprim::criteria
