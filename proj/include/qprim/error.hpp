#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qprim {

enum class ErrorKind {
    invalid_base,
    invalid_input,
    invalid_modulus,
    invalid_discriminant,
    invalid_probability,
    invalid_config,
    unsupported_magnitude,
    degenerate_denominator,
    degenerate,
    no_odd_values,
    no_odd_prime_divisor,
    precision_exceeded,
    reducible,
    checkpoint_error,
    lemma_violation,
    contradiction,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace qprim
