#pragma once

// Record search: candidate quadratics 2^a d1 r1 (X+s)^2 +- 2^a d2 r2 + 1 built
// from a non-residue-rich d, their admissible bases, and checkpointed sweeps of
// k^2 g over k.

#include "qprim/int128.hpp"
#include "qprim/poly.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qprim::search {

struct SearchConfig {
    i128 d = 0;
    i128 d1 = 0;
    int alpha = 0;
    int sign = 1;     // +1 or -1 in front of 2^alpha d2 r2
    i128 shift = 0;   // X -> X + shift
    i128 r1 = 1;
    i128 r2 = 1;
    i128 g_base = 0;
    i64 k_lo = 1;
    i64 k_hi = 1;
    i64 n_cap = 100'000'000;

    i128 d2() const { return d1 == 0 ? 0 : d / d1; }
};

/// Throws invalid-config unless d is squarefree, d1 | d, r1 r2 is a square,
/// alpha >= 0, sign = +-1, shift >= 0, 1 <= k_lo <= k_hi, n_cap >= 0 and g_base
/// is a valid base.
void validate(const SearchConfig& cfg);

/// f(X) = 2^alpha d1 r1 (X+shift)^2 + sign 2^alpha d2 r2 + 1, expanded and
/// divided by its content.
poly::PolyZ candidate_poly(const SearchConfig& cfg);

/// Structural problems of a candidate that make it useless for a search
/// (even values, non-primitive shape, square discriminant, ...).
std::vector<std::string> candidate_warnings(const SearchConfig& cfg);

/// All g with |g| <= g_bound, g outside {-1} and the squares, whose field
/// discriminant D is admissible for f (tau_D^-(f) = 1). Sorted ascending.
std::vector<i128> admissible_bases(const poly::QuadraticPoly& f, i128 g_bound);

/// delta(f), used to rank candidates.
double quality(const poly::QuadraticPoly& f);

struct SearchRecord {
    std::string config_hash;
    i64 k = 0;
    i128 g = 0;
    std::uint64_t c = 0;
    std::optional<u128> failing_prime;
    std::string timestamp;
    bool lower_bound = false;  // the streak did not fail within n_cap
};

struct SweepOptions {
    unsigned workers = 1;
    i64 checkpoint_every = 16;
    std::chrono::seconds checkpoint_interval{30};
    /// Stop (as if interrupted) once this many k values were processed in this run.
    std::optional<i64> stop_after;
};

/// 16 hex digits of FNV-1a over the canonical config text.
std::string config_hash(const SearchConfig& cfg);

/// Streaks for k = k_lo..k_hi with g = k^2 g_base, best = max c, ties to the
/// smallest k. With a non-empty checkpoint_path, progress lines are appended
/// and an existing file is resumed from its last line.
SearchRecord sweep(const SearchConfig& cfg, const std::string& checkpoint_path,
                   const SweepOptions& options = {});

} // namespace qprim::search
