#pragma once

// Integer polynomials, residue statistics modulo m, and the quadratic family
// aX^2+bX+c (a > 0, content 1, nonsquare discriminant, a+b and c not both even).

#include "qprim/int128.hpp"
#include "qprim/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qprim::poly {

/// Polynomial over the integers, constant term first. Trailing zero
/// coefficients are trimmed, so the zero polynomial has no coefficients.
class PolyZ {
public:
    PolyZ() = default;
    explicit PolyZ(std::vector<i128> coefficients);

    const std::vector<i128>& coefficients() const { return coeffs_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    i128 coefficient(int i) const
    {
        return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(i)] : 0;
    }
    i128 content() const;

    /// f(X + shift).
    PolyZ shifted(i128 shift) const;

    friend bool operator==(const PolyZ&, const PolyZ&) = default;

private:
    std::vector<i128> coeffs_;
};

/// aX^2 + bX + c with cached discriminant d = b^2 - 4ac.
class QuadraticPoly {
public:
    QuadraticPoly(i128 a, i128 b, i128 c);

    i128 a() const { return a_; }
    i128 b() const { return b_; }
    i128 c() const { return c_; }
    i128 d() const { return d_; }

    PolyZ to_poly() const { return PolyZ({c_, b_, a_}); }
    static QuadraticPoly from_poly(const PolyZ& f);

    friend bool operator==(const QuadraticPoly&, const QuadraticPoly&) = default;

private:
    i128 a_, b_, c_, d_;
};

struct Mod8Profile {
    Rational alpha1, alpha3, alpha5, alpha7;

    friend bool operator==(const Mod8Profile&, const Mod8Profile&) = default;
};

/// Exact f(n); overflow beyond 128 bits raises unsupported-magnitude.
i128 eval(const PolyZ& f, i128 n);

/// f(s) mod m in [0, m), by Horner's rule on reduced coefficients.
u64 eval_mod(const PolyZ& f, u64 s, u64 m);

bool in_family_F(const QuadraticPoly& f);

/// #{s mod m : f(s) = 0 mod m}, by enumeration.
u64 count_roots_mod(const PolyZ& f, u64 m);

/// #{s mod m : f(s) = t mod m}, by enumeration.
u64 count_residue_class(const PolyZ& f, u64 m, i128 t);

/// alpha_j = #{s mod 8 : f(s) = j mod 8} / (4 #{s mod 2 : f(s) odd}).
Mod8Profile mod8_profile(const PolyZ& f);

/// Parses "c0,c1,...,ck" (constant first).
PolyZ parse_coefficients(std::string_view text);
/// Parses "a,b,c" as aX^2+bX+c.
QuadraticPoly parse_quadratic(std::string_view text);

/// Renders as e.g. "1008068X^2+16921429448X+15753313937".
std::string format(const PolyZ& f);
std::string format(const QuadraticPoly& f);

} // namespace qprim::poly
