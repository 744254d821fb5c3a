#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cde {

enum class Errc {
    ZeroInverse,
    Singular,
    Inconsistent,
    DegenerateKernel,
    DimensionMismatch,
    WidthMismatch,
    WeightTooLow,
    InvalidInstance,
    MissingWeights,
    MissingGroups,
    FieldTooSmall,
    InvalidField,
    ConstructionFailed,
    InsufficientKnowledge,
    SingularSystem,
    TooLarge,
    InvalidBasis,
    Parse,
};

std::string_view to_string(Errc code) noexcept;

/// Single exception type for the library; `code()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
    throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace cde
