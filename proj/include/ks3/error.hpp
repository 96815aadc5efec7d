/*
 * Error taxonomy for the ks3 toolkit.
 *
 * Two families matter to callers:
 *   InputError    — the caller handed us something malformed (bad file, bad
 *                   dimension, a map that is not unital, ...). CLI exit code 2.
 *   NumericError  — an internal numerical routine failed to meet its own
 *                   contract (eigensolver non-convergence). CLI exit code 3.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace ks3 {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InputError : Error {
    using Error::Error;
};

struct NumericError : Error {
    using Error::Error;
};

struct InvalidDimension : InputError {
    using InputError::InputError;
};

struct IndexOutOfRange : InputError {
    using InputError::InputError;
};

struct DimensionMismatch : InputError {
    using InputError::InputError;
};

struct NonHermitianInput : InputError {
    using InputError::InputError;
};

struct NotUnital : InputError {
    using InputError::InputError;
};

struct NotHermiticityPreserving : InputError {
    using InputError::InputError;
};

struct NotTracePreserving : InputError {
    using InputError::InputError;
};

struct NotUnitary : InputError {
    using InputError::InputError;
};

struct NonHermitianChoi : InputError {
    using InputError::InputError;
};

struct RejectedSample : InputError {
    using InputError::InputError;
};

// Carries a JSON pointer ("/ops/1/0/2") locating the offending node.
struct SchemaError : InputError {
    SchemaError(const std::string& pointer, const std::string& msg)
        : InputError(pointer + ": " + msg), pointer_(pointer) {}
    const std::string& pointer() const { return pointer_; }

  private:
    std::string pointer_;
};

struct IoError : InputError {
    using InputError::InputError;
};

struct UnknownCommand : InputError {
    using InputError::InputError;
};

// Jacobi sweep cap exceeded; callers cannot fix this with better input.
struct ConvergenceError : NumericError {
    using NumericError::NumericError;
};

}  // namespace ks3
