#include "qprim/poly.hpp"

#include "qprim/error.hpp"

#include <sstream>

namespace qprim::poly {

namespace {

u64 mod_of(i128 v, u64 m)
{
    const i128 r = v % static_cast<i128>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i128>(m) : r);
}

std::vector<std::string_view> split_commas(std::string_view text)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        parts.push_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return parts;
}

} // namespace

PolyZ::PolyZ(std::vector<i128> coefficients) : coeffs_(std::move(coefficients))
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

i128 PolyZ::content() const
{
    i128 g = 0;
    for (i128 c : coeffs_)
        g = gcd(g, c);
    return g;
}

PolyZ PolyZ::shifted(i128 shift) const
{
    // Horner in the ring Z[X]: result = result * (X + shift) + c_i.
    std::vector<i128> result;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        std::vector<i128> next(result.size() + 1, 0);
        for (std::size_t i = 0; i < result.size(); ++i) {
            next[i + 1] = checked_add(next[i + 1], result[i]);
            next[i] = checked_add(next[i], checked_mul(result[i], shift));
        }
        next[0] = checked_add(next[0], *it);
        result = std::move(next);
    }
    return PolyZ(std::move(result));
}

QuadraticPoly::QuadraticPoly(i128 a, i128 b, i128 c) : a_(a), b_(b), c_(c)
{
    if (a == 0)
        throw Error(ErrorKind::invalid_input, "quadratic needs a nonzero leading coefficient");
    d_ = checked_add(checked_mul(b, b), -checked_mul(checked_mul(4, a), c));
}

QuadraticPoly QuadraticPoly::from_poly(const PolyZ& f)
{
    if (f.degree() != 2)
        throw Error(ErrorKind::invalid_input, "not a quadratic: " + format(f));
    return {f.coefficient(2), f.coefficient(1), f.coefficient(0)};
}

i128 eval(const PolyZ& f, i128 n)
{
    i128 acc = 0;
    const auto& c = f.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = checked_add(checked_mul(acc, n), *it);
    return acc;
}

u64 eval_mod(const PolyZ& f, u64 s, u64 m)
{
    if (m == 1)
        return 0;
    u128 acc = 0;
    const auto& c = f.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = (acc * s + mod_of(*it, m)) % m;
    return static_cast<u64>(acc);
}

bool in_family_F(const QuadraticPoly& f)
{
    if (f.a() <= 0)
        return false;
    if (gcd(gcd(f.a(), f.b()), f.c()) != 1)
        return false;
    if (is_perfect_square(f.d()))
        return false;
    const bool apb_even = ((f.a() + f.b()) & 1) == 0;
    const bool c_even = (f.c() & 1) == 0;
    return !(apb_even && c_even);
}

u64 count_residue_class(const PolyZ& f, u64 m, i128 t)
{
    if (m < 2)
        throw Error(ErrorKind::invalid_modulus, "residue counting needs m >= 2");
    const u64 target = mod_of(t, m);
    u64 count = 0;
    for (u64 s = 0; s < m; ++s)
        if (eval_mod(f, s, m) == target)
            ++count;
    return count;
}

u64 count_roots_mod(const PolyZ& f, u64 m)
{
    return count_residue_class(f, m, 0);
}

Mod8Profile mod8_profile(const PolyZ& f)
{
    const u64 odd_classes = 2 - count_residue_class(f, 2, 0);
    if (odd_classes == 0)
        throw Error(ErrorKind::no_odd_values, "polynomial takes only even values: " + format(f));
    const i128 den = 4 * static_cast<i128>(odd_classes);
    auto alpha = [&](int j) { return Rational(static_cast<i128>(count_residue_class(f, 8, j)), den); };
    return {alpha(1), alpha(3), alpha(5), alpha(7)};
}

PolyZ parse_coefficients(std::string_view text)
{
    std::vector<i128> coeffs;
    for (std::string_view part : split_commas(text))
        coeffs.push_back(parse_i128(part));
    return PolyZ(std::move(coeffs));
}

QuadraticPoly parse_quadratic(std::string_view text)
{
    const auto parts = split_commas(text);
    if (parts.size() != 3)
        throw Error(ErrorKind::invalid_input, "expected 'a,b,c', got '" + std::string(text) + "'");
    return {parse_i128(parts[0]), parse_i128(parts[1]), parse_i128(parts[2])};
}

std::string format(const PolyZ& f)
{
    if (f.degree() < 0)
        return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        const i128 c = f.coefficient(i);
        if (c == 0)
            continue;
        const i128 mag = abs128(c);
        if (first)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? "-" : "+");
        first = false;
        if (mag != 1 || i == 0)
            out << to_string(mag);
        if (i >= 1)
            out << 'X';
        if (i >= 2)
            out << '^' << i;
    }
    return out.str();
}

std::string format(const QuadraticPoly& f)
{
    return format(f.to_poly());
}

} // namespace qprim::poly
