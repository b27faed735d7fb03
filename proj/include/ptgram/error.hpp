#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptgram {

enum class ErrorKind {
    InvalidInput,
    NonConvergence,
    SingularMatrix,
    AmbiguousPairing,
    DefectiveMatrix,
    InvalidParity,
    UnpairedComplexEigenvalue,
    NotPTInvariant,
    SignatureUndefined,
    NotPositiveDefinite,
    InvalidGrid,
    EnsembleExhausted,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::AmbiguousPairing: return "AmbiguousPairing";
        case ErrorKind::DefectiveMatrix: return "DefectiveMatrix";
        case ErrorKind::InvalidParity: return "InvalidParity";
        case ErrorKind::UnpairedComplexEigenvalue: return "UnpairedComplexEigenvalue";
        case ErrorKind::NotPTInvariant: return "NotPTInvariant";
        case ErrorKind::SignatureUndefined: return "SignatureUndefined";
        case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorKind::InvalidGrid: return "InvalidGrid";
        case ErrorKind::EnsembleExhausted: return "EnsembleExhausted";
    }
    return "Unknown";
}

// Errors that mean the input could not be handled numerically, as opposed to
// a structural finding (e.g. the input simply is not PT-symmetric).
constexpr bool is_numerical_failure(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NonConvergence:
        case ErrorKind::SingularMatrix:
        case ErrorKind::AmbiguousPairing:
        case ErrorKind::DefectiveMatrix:
        case ErrorKind::NotPositiveDefinite:
            return true;
        default:
            return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace ptgram
