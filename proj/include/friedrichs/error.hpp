// error.hpp - error kinds raised by the friedrichs library

#pragma once

#include <stdexcept>
#include <string>

namespace friedrichs {

enum class ErrorKind {
    Validation,
    Parse,
    ZeroVector,
    AllZeroAmplitudes,
    OnCut,
    QuadratureFailure,
    SingularLimit,
    SingularSystem,
    BudgetExceeded,
    DegenerateChi,
    NoRoot,
    CalibrationFailure,
};

const char* to_string(ErrorKind kind) noexcept;

// True for failures caused by bad input rather than by the numerics.
bool is_input_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace friedrichs
