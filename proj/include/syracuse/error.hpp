#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace syracuse {

enum class ErrorCode {
    NotInGroup,
    CapExceeded,
    OddInput,
    CutoffReached,
    NotAdmissible,
    SourceDivisibleBy3,
    SourceNotOnTrajectory,
    IndexOutOfRange,
    PatternLengthMismatch,
    InvalidP,
    LevelMismatch,
    RootLoop,
    ParseError,
    InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NotInGroup: return "NotInGroup";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::OddInput: return "OddInput";
    case ErrorCode::CutoffReached: return "CutoffReached";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::SourceDivisibleBy3: return "SourceDivisibleBy3";
    case ErrorCode::SourceNotOnTrajectory: return "SourceNotOnTrajectory";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::PatternLengthMismatch: return "PatternLengthMismatch";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::RootLoop: return "RootLoop";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every domain failure in the library is reported through this type; the
/// code is stable and is what the CLI prints.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace syracuse
