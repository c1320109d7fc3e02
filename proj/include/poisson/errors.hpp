#pragma once

#include <stdexcept>
#include <string>

namespace poisson {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input errors: malformed text, unknown names, wrong shapes.
struct InputError : Error {
    using Error::Error;
};

struct ParseError : InputError {
    using InputError::InputError;
};
struct UnknownKey : InputError {
    using InputError::InputError;
};
struct MissingParam : InputError {
    using InputError::InputError;
};
struct BadDimension : InputError {
    using InputError::InputError;
};
struct DimensionMismatch : InputError {
    using InputError::InputError;
};

// Mathematical failures.
struct MathError : Error {
    using Error::Error;
};

struct SingularMatrix : MathError {
    using MathError::MathError;
};
struct SingularFamily : MathError {
    using MathError::MathError;
};
struct PoleAtZero : MathError {
    using MathError::MathError;
};
struct DivisionByZero : MathError {
    using MathError::MathError;
};
struct InconsistentEvidence : MathError {
    using MathError::MathError;
};
struct CycleDetected : MathError {
    using MathError::MathError;
};

}  // namespace poisson
