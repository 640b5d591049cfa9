#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace snyder {

enum class ErrorCode {
    NonPositiveMass,
    NonPositiveCoupling,
    NegativeBeta,
    NonFinite,
    InvalidQuantumNumbers,
    OutOfWindow,
    RequiresNonzeroL,
    ToleranceNotReached,
    NoRootInWindow,
    DegenerateFit,
    InvalidArgument,
    CollisionSingularity,
    StepUnderflow,
    InsufficientPeriods,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NonPositiveMass:       return "NonPositiveMass";
    case ErrorCode::NonPositiveCoupling:   return "NonPositiveCoupling";
    case ErrorCode::NegativeBeta:          return "NegativeBeta";
    case ErrorCode::NonFinite:             return "NonFinite";
    case ErrorCode::InvalidQuantumNumbers: return "InvalidQuantumNumbers";
    case ErrorCode::OutOfWindow:           return "OutOfWindow";
    case ErrorCode::RequiresNonzeroL:      return "RequiresNonzeroL";
    case ErrorCode::ToleranceNotReached:   return "ToleranceNotReached";
    case ErrorCode::NoRootInWindow:        return "NoRootInWindow";
    case ErrorCode::DegenerateFit:         return "DegenerateFit";
    case ErrorCode::InvalidArgument:       return "InvalidArgument";
    case ErrorCode::CollisionSingularity:  return "CollisionSingularity";
    case ErrorCode::StepUnderflow:         return "StepUnderflow";
    case ErrorCode::InsufficientPeriods:   return "InsufficientPeriods";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable code; what() is "<Code>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code)
    {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace snyder
