#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qprim {

using i128 = __int128;
using u128 = unsigned __int128;
using u64 = std::uint64_t;
using i64 = std::int64_t;

std::string to_string(i128 v);
std::string to_string(u128 v);

/// Parses an optionally signed decimal integer; throws Error(invalid_input) on junk or overflow.
i128 parse_i128(std::string_view text);

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

/// Floor square root of a nonnegative 128-bit value.
u128 isqrt(u128 n);
bool is_perfect_square(i128 n);

bool fits_i64(i128 v);
bool fits_u64(i128 v);

i128 gcd(i128 a, i128 b);

// Checked arithmetic; throws Error(unsupported_magnitude) on overflow.
i128 checked_add(i128 a, i128 b);
i128 checked_mul(i128 a, i128 b);

} // namespace qprim

// Streams __int128 values in decimal (tests and diagnostics).
std::ostream& operator<<(std::ostream& os, __int128 v);
