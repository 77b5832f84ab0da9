#pragma once

// Named reproduction instances: classical streaks, prime-rich quadratics and
// the record-search examples, each with its exact polynomial and base.

#include "qprim/int128.hpp"
#include "qprim/poly.hpp"
#include "qprim/search.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qprim::presets {

struct Preset {
    std::string name;
    std::string description;
    std::string source_form;  // polynomial as originally written
    poly::PolyZ poly;
    std::optional<i128> g;
    std::optional<search::SearchConfig> config;  // when built by candidate_poly
    std::optional<i64> k;                          // g = k^2 * config->g_base
    std::optional<std::uint64_t> expected_c;
    std::optional<u128> failing_prime;
    std::optional<i64> n_at_failure;
    std::optional<u128> residual_index;
    std::uint64_t default_prefix = 0;  // primes checked without --long-run (0: full)
};

const std::vector<Preset>& preset_registry();

/// Throws invalid-input for an unknown name.
const Preset& find_preset(const std::string& name);

} // namespace qprim::presets
