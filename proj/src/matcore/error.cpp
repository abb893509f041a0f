#include "regdil/error.hpp"

namespace regdil {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::NonHermitian: return "NonHermitian";
        case ErrorCode::NormTooLarge: return "NormTooLarge";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::NegativeTime: return "NegativeTime";
        case ErrorCode::NonpositiveTime: return "NonpositiveTime";
        case ErrorCode::CommutationViolation: return "CommutationViolation";
        case ErrorCode::NotStronglyCommuting: return "NotStronglyCommuting";
        case ErrorCode::BadParameters: return "BadParameters";
        case ErrorCode::DimensionBudgetExceeded: return "DimensionBudgetExceeded";
        case ErrorCode::SingularGenerator: return "SingularGenerator";
        case ErrorCode::NonpositiveOmega: return "NonpositiveOmega";
        case ErrorCode::NonpositiveGridPoint: return "NonpositiveGridPoint";
        case ErrorCode::NoSignChange: return "NoSignChange";
        case ErrorCode::MaxIterations: return "MaxIterations";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::EmptyPolynomial: return "EmptyPolynomial";
        case ErrorCode::SearchExhausted: return "SearchExhausted";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::LapackFailure: return "LapackFailure";
    }
    return "Unknown";
}

}  // namespace regdil
