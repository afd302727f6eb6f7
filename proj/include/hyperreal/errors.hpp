#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperreal {

enum class ErrorCode {
    ZeroDeterminant,
    DegenerateAxis,
    UnitShift,
    ZeroShift,
    NotHyperbolic,
    NotDisjoint,
    NotCrossing,
    InfiniteFixedPoint,
    NotShift,
    TooShort,
    IndexOutOfRange,
    ClassMismatch,
    NotSequential,
    BadParamCount,
    NotConstructible,
    BadPlacement,
    TooFewBoundary,
    WordNotFound,
    NoSolution,
    NotAdmissible,
    ClassViolation,
    NoReference,
    LengthMismatch,
    RoleNotFound,
    NotNonRealPair,
    MalformedInput,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::ZeroDeterminant: return "ZeroDeterminant";
    case ErrorCode::DegenerateAxis: return "DegenerateAxis";
    case ErrorCode::UnitShift: return "UnitShift";
    case ErrorCode::ZeroShift: return "ZeroShift";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::NotDisjoint: return "NotDisjoint";
    case ErrorCode::NotCrossing: return "NotCrossing";
    case ErrorCode::InfiniteFixedPoint: return "InfiniteFixedPoint";
    case ErrorCode::NotShift: return "NotShift";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ClassMismatch: return "ClassMismatch";
    case ErrorCode::NotSequential: return "NotSequential";
    case ErrorCode::BadParamCount: return "BadParamCount";
    case ErrorCode::NotConstructible: return "NotConstructible";
    case ErrorCode::BadPlacement: return "BadPlacement";
    case ErrorCode::TooFewBoundary: return "TooFewBoundary";
    case ErrorCode::WordNotFound: return "WordNotFound";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::ClassViolation: return "ClassViolation";
    case ErrorCode::NoReference: return "NoReference";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::RoleNotFound: return "RoleNotFound";
    case ErrorCode::NotNonRealPair: return "NotNonRealPair";
    case ErrorCode::MalformedInput: return "MalformedInput";
    }
    return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace hyperreal
