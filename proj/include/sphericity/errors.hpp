#pragma once

#include <stdexcept>
#include <string>

namespace sphericity {

enum class ErrorCode {
    NonFiniteInput,
    SingularGram,
    MissingEigenvalues,
    ZeroTrace,
    SampleTooSmall,
    DegenerateT1,
    KindMismatch,
    NonFiniteStatistic,
    NonPositiveDiagonal,
    PoleOnContour,
    NonVanishingImaginaryPart,
    BadContourRadius,
    FileNotFound,
    ParseError,
    PlanParseError,
    InvalidArgument,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonFiniteInput: return "NonFiniteInput";
        case ErrorCode::SingularGram: return "SingularGram";
        case ErrorCode::MissingEigenvalues: return "MissingEigenvalues";
        case ErrorCode::ZeroTrace: return "ZeroTrace";
        case ErrorCode::SampleTooSmall: return "SampleTooSmall";
        case ErrorCode::DegenerateT1: return "DegenerateT1";
        case ErrorCode::KindMismatch: return "KindMismatch";
        case ErrorCode::NonFiniteStatistic: return "NonFiniteStatistic";
        case ErrorCode::NonPositiveDiagonal: return "NonPositiveDiagonal";
        case ErrorCode::PoleOnContour: return "PoleOnContour";
        case ErrorCode::NonVanishingImaginaryPart: return "NonVanishingImaginaryPart";
        case ErrorCode::BadContourRadius: return "BadContourRadius";
        case ErrorCode::FileNotFound: return "FileNotFound";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::PlanParseError: return "PlanParseError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace sphericity
