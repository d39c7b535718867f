#pragma once

#include <stdexcept>
#include <string>

namespace hexflow {

enum class ErrorCode {
    NonAdmissibleDirection,
    ParamOutOfRange,
    UnboundedEdge,
    SchemaError,
    DanglingReference,
    DuplicateId,
    UnsupportedJunction,
    NotConical,
    NoCHField,
    SingularSystem,
    HeightBoundViolation,
    CompatibilityViolation,
    NotEvolvable,
    StepTooLarge,
    InvalidArgument,
    NoSamples,
    ClosureFailure,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_name(code)) + ": " + msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace hexflow
