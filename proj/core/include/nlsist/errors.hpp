#pragma once

#include <stdexcept>
#include <string>

namespace nlsist {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid argument values (wrong half-plane, s = 0, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Evaluation point outside the supported range of an operation.
struct RangeError : Error {
    using Error::Error;
};

/// Non-finite or structurally malformed input data.
struct InputError : Error {
    using Error::Error;
};

/// |a(z)| fell below threshold on the real line: the datum is outside the
/// generic class and the reflection coefficient is not trustworthy.
struct NonGenericDatumError : Error {
    using Error::Error;
};

/// Argument-principle zero count disagrees with the refined roots.
struct RootCountError : Error {
    using Error::Error;
};

/// Residual of an eigenvalue/norming-constant consistency check too large.
struct NotAnEigenvalueError : Error {
    using Error::Error;
};

struct NonSimpleZeroError : Error {
    using Error::Error;
};

/// The discretized singular-integral system could not be solved to tolerance.
struct IllConditionedRHError : Error {
    using Error::Error;
};

struct DegenerateBacklundError : Error {
    using Error::Error;
};

struct UnsupportedRangeError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace nlsist
