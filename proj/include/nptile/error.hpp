#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nptile {

enum class ErrorKind {
    NyquistViolation,
    SymmetryViolation,
    AmplitudeTooLarge,
    ParamsInvalid,
    NoConvergence,
    BallEscape,
    AllZeroAlpha,
    PerturbationTooLarge,
    BandwidthExceedsGap,
    SearchSpaceTooLarge,
    ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` lets callers map failures
/// to exit codes without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NyquistViolation: return "NyquistViolation";
        case ErrorKind::SymmetryViolation: return "SymmetryViolation";
        case ErrorKind::AmplitudeTooLarge: return "AmplitudeTooLarge";
        case ErrorKind::ParamsInvalid: return "ParamsInvalid";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::BallEscape: return "BallEscape";
        case ErrorKind::AllZeroAlpha: return "AllZeroAlpha";
        case ErrorKind::PerturbationTooLarge: return "PerturbationTooLarge";
        case ErrorKind::BandwidthExceedsGap: return "BandwidthExceedsGap";
        case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace nptile
