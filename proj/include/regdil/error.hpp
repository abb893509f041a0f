#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace regdil {

enum class ErrorCode {
    NonFinite,
    NonHermitian,
    NormTooLarge,
    DimensionMismatch,
    IndexOutOfRange,
    NegativeTime,
    NonpositiveTime,
    CommutationViolation,
    NotStronglyCommuting,
    BadParameters,
    DimensionBudgetExceeded,
    SingularGenerator,
    NonpositiveOmega,
    NonpositiveGridPoint,
    NoSignChange,
    MaxIterations,
    ArityMismatch,
    EmptyPolynomial,
    SearchExhausted,
    ParseError,
    LapackFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure is reported through this type; `code()` is what
// callers (and the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace regdil
