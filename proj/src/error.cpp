#include "qprim/error.hpp"

namespace qprim {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::invalid_base: return "invalid-base";
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::invalid_modulus: return "invalid-modulus";
    case ErrorKind::invalid_discriminant: return "invalid-discriminant";
    case ErrorKind::invalid_probability: return "invalid-probability";
    case ErrorKind::invalid_config: return "invalid-config";
    case ErrorKind::unsupported_magnitude: return "unsupported-magnitude";
    case ErrorKind::degenerate_denominator: return "degenerate-denominator";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::no_odd_values: return "no-odd-values";
    case ErrorKind::no_odd_prime_divisor: return "no-odd-prime-divisor";
    case ErrorKind::precision_exceeded: return "precision-exceeded";
    case ErrorKind::reducible: return "reducible";
    case ErrorKind::checkpoint_error: return "checkpoint-error";
    case ErrorKind::lemma_violation: return "lemma-violation";
    case ErrorKind::contradiction: return "contradiction";
    }
    return "unknown";
}

} // namespace qprim
