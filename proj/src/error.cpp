#include "friedrichs/error.hpp"

namespace friedrichs {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Validation: return "ValidationError";
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::AllZeroAmplitudes: return "AllZeroAmplitudes";
        case ErrorKind::OnCut: return "OnCut";
        case ErrorKind::QuadratureFailure: return "QuadratureFailure";
        case ErrorKind::SingularLimit: return "SingularLimit";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::DegenerateChi: return "DegenerateChi";
        case ErrorKind::NoRoot: return "NoRoot";
        case ErrorKind::CalibrationFailure: return "CalibrationFailure";
    }
    return "Error";
}

bool is_input_error(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Validation:
        case ErrorKind::Parse:
        case ErrorKind::ZeroVector:
        case ErrorKind::AllZeroAmplitudes:
            return true;
        default:
            return false;
    }
}

}  // namespace friedrichs
