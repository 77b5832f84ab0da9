#pragma once

// Complete quadratic character sums and the local/global densities built
// from them. Everything here is exact: Kronecker symbols and Rationals.

#include "qprim/int128.hpp"
#include "qprim/poly.hpp"
#include "qprim/rational.hpp"

#include <vector>

namespace qprim::charsums {

/// Discriminant of a quadratic field; odd_part is |D| with the 2-part removed.
struct FundamentalDiscriminant {
    i128 D;
    i128 odd_part;

    friend bool operator==(const FundamentalDiscriminant&, const FundamentalDiscriminant&) = default;
};

bool is_fundamental(i128 D);

/// Validates D and wraps it; throws invalid-discriminant otherwise.
FundamentalDiscriminant make_discriminant(i128 D);

/// Discriminant of Q(sqrt g) for g outside {-1} and the perfect squares.
FundamentalDiscriminant fundamental_discriminant(i128 g);

/// True iff g != -1 and g is not a perfect square (0 and 1 included).
bool in_base_set(i128 g);

/// sum_{m mod p} ((m^2 + a)/p): p - 1 if p | a, else -1.
i128 jacobsthal_sum(i128 a, u64 p);

/// T_p(f) = sum_{m mod p} (f(m)/p), closed form.
i128 t_sum(const poly::QuadraticPoly& f, u64 p);

/// T_p(f) by direct summation (any degree).
i128 t_sum_brute(const poly::PolyZ& f, u64 p);

/// a_p(f) for quadratic f, closed form by cases on p | a and p | d.
Rational a_p_local(const poly::QuadraticPoly& f, u64 p);

/// a_p(f) = T_p(f) / #{r : p does not divide f(r)}, by enumeration.
Rational a_p_brute(const poly::PolyZ& f, u64 p);

/// a_d(f) = prod_{p | d} a_p(f) for odd squarefree d > 1.
Rational a_d_global(const poly::QuadraticPoly& f, i128 d);

/// a_d(f) by the defining ratio: Jacobi-symbol sum over r mod d divided by the
/// number of residues with gcd(f(r), d) = 1. O(d).
Rational a_d_enumerated(const poly::PolyZ& f, u64 d);

/// Product-free closed form in terms of (D,a), (D,a,d) and the primes of D
/// not dividing ad.
Rational a_d_closed_form(const poly::QuadraticPoly& f, i128 d);

/// Proportion of prime values f(n) inert in the quadratic field of discriminant D.
Rational tau_minus(const poly::PolyZ& f, const FundamentalDiscriminant& D);

/// Fundamental D with |D| <= bound, odd part > 1 and tau_D^-(f) = 1; the search
/// runs over divisors of 24ad. bound <= 0 means unbounded. Sorted ascending.
std::vector<FundamentalDiscriminant> admissible_discriminants(const poly::QuadraticPoly& f, i128 bound = 0);

} // namespace qprim::charsums
