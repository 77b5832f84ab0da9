#include "qprim/int128.hpp"

#include "qprim/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace qprim {

std::string to_string(u128 v)
{
    if (v == 0)
        return "0";
    std::string out;
    while (v > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::string to_string(i128 v)
{
    if (v < 0)
        return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
    return to_string(static_cast<u128>(v));
}

i128 parse_i128(std::string_view text)
{
    std::size_t pos = 0;
    bool negative = false;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    std::size_t end = text.size();
    while (end > pos && std::isspace(static_cast<unsigned char>(text[end - 1])))
        --end;
    if (pos == end)
        throw Error(ErrorKind::invalid_input, "empty integer literal '" + std::string(text) + "'");
    constexpr u128 limit = static_cast<u128>(std::numeric_limits<i128>::max());
    u128 value = 0;
    for (; pos < end; ++pos) {
        const char ch = text[pos];
        if (ch < '0' || ch > '9')
            throw Error(ErrorKind::invalid_input, "not an integer: '" + std::string(text) + "'");
        value = value * 10 + static_cast<u128>(ch - '0');
        if (value > limit)
            throw Error(ErrorKind::unsupported_magnitude, "integer literal too large: " + std::string(text));
    }
    return negative ? -static_cast<i128>(value) : static_cast<i128>(value);
}

u128 isqrt(u128 n)
{
    if (n < 2)
        return n;
    u128 x = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
    // Fix up the floating estimate in both directions.
    while (x > 0 && x > n / x)
        --x;
    while ((x + 1) <= n / (x + 1))
        ++x;
    return x;
}

bool is_perfect_square(i128 n)
{
    if (n < 0)
        return false;
    const u128 r = isqrt(static_cast<u128>(n));
    return r * r == static_cast<u128>(n);
}

bool fits_i64(i128 v)
{
    return v >= std::numeric_limits<i64>::min() && v <= std::numeric_limits<i64>::max();
}

bool fits_u64(i128 v)
{
    return v >= 0 && v <= static_cast<i128>(std::numeric_limits<u64>::max());
}

i128 gcd(i128 a, i128 b)
{
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i128 checked_add(i128 a, i128 b)
{
    i128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw Error(ErrorKind::unsupported_magnitude, "128-bit addition overflow");
    return r;
}

i128 checked_mul(i128 a, i128 b)
{
    i128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error(ErrorKind::unsupported_magnitude, "128-bit multiplication overflow");
    return r;
}

} // namespace qprim

std::ostream& operator<<(std::ostream& os, __int128 v)
{
    return os << qprim::to_string(static_cast<qprim::i128>(v));
}
