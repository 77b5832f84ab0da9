#include "qprim/rational.hpp"

#include "qprim/error.hpp"

#include <ostream>

namespace qprim {

Rational::Rational(i128 num, i128 den)
{
    if (den == 0)
        throw Error(ErrorKind::degenerate_denominator, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const i128 g = gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

std::string Rational::str() const
{
    if (den_ == 1)
        return to_string(num_);
    return to_string(num_) + "/" + to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b)
{
    const i128 g = gcd(a.den_, b.den_);
    const i128 lhs = checked_mul(a.num_, b.den_ / g);
    const i128 rhs = checked_mul(b.num_, a.den_ / g);
    return {checked_add(lhs, rhs), checked_mul(a.den_ / g, b.den_)};
}

Rational operator-(const Rational& a, const Rational& b)
{
    return a + (-b);
}

Rational operator*(const Rational& a, const Rational& b)
{
    // Cross-cancel first to keep intermediates small.
    const i128 g1 = gcd(a.num_, b.den_);
    const i128 g2 = gcd(b.num_, a.den_);
    return {checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1)};
}

Rational operator/(const Rational& a, const Rational& b)
{
    if (b.num_ == 0)
        throw Error(ErrorKind::degenerate_denominator, "division by zero rational");
    return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    const i128 lhs = checked_mul(a.num_, b.den_);
    const i128 rhs = checked_mul(b.num_, a.den_);
    return lhs <=> rhs;
}

std::ostream& operator<<(std::ostream& os, const Rational& r)
{
    return os << r.str();
}

} // namespace qprim
