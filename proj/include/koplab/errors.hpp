#pragma once

#include <stdexcept>
#include <string>

namespace koplab {

enum class ErrorCode {
    ParameterOutOfRange = 1,
    DomainError,
    BandOutOfRange,
    SizeMismatch,
    SingularMultiplier,
    QuadratureFailure,
    ConvergenceFailure,
    EmptyTrajectory,
    MissingComponent,
    VacuumError,
    BlowUp,
    DegenerateFit,
    IoError,
};

/// All library errors are thrown as Error; the C API maps them to codes.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BandOutOfRange: return "BandOutOfRange";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::SingularMultiplier: return "SingularMultiplier";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorCode::MissingComponent: return "MissingComponent";
    case ErrorCode::VacuumError: return "VacuumError";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace koplab
