#pragma once

#include "qprim/int128.hpp"

#include <compare>
#include <iosfwd>
#include <string>

namespace qprim {

/// Exact rational with 128-bit parts, always in lowest terms with positive
/// denominator. Overflow raises unsupported-magnitude rather than wrapping.
class Rational {
public:
    Rational() = default;
    Rational(i128 num) : num_(num) {}  // NOLINT: implicit from integers is intended
    Rational(i128 num, i128 den);

    i128 num() const { return num_; }
    i128 den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    long double to_long_double() const
    {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    /// "num/den", or just "num" for integers.
    std::string str() const;

    Rational operator-() const { return {-num_, den_}; }
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    i128 num_ = 0;
    i128 den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace qprim
