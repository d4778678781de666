#pragma once

#include <stdexcept>
#include <string>

namespace dds {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (x <= 0, s <= 1, ...).
struct DomainError : Error {
    using Error::Error;
};

// Argument above the supported magnitude of the range-reduction machinery.
struct RangeError : Error {
    using Error::Error;
};

// A trig kernel was evaluated too close to one of its poles.
struct PoleError : Error {
    PoleError(const std::string& msg, long long idx) : Error(msg), index(idx) {}
    long long index;
};

// A jump point of the floor integrator coincides with an integrand pole.
struct CommonDiscontinuityError : PoleError {
    using PoleError::PoleError;
};

// An internal cross-check failed (e.g. a value that must be real came out complex).
struct ConsistencyError : Error {
    using Error::Error;
};

// Linear system for a curve fit is singular.
struct FitError : Error {
    using Error::Error;
};

// Fitted curve has zero discriminant.
struct DegenerateCurveError : Error {
    using Error::Error;
};

// Malformed digit-string input.
struct ParseError : Error {
    using Error::Error;
};

// Requested continued-fraction depth exceeds what the supplied digits support.
struct DepthError : Error {
    DepthError(const std::string& msg, int max_safe_count) : Error(msg), max_safe(max_safe_count) {}
    int max_safe;
};

// A parameter combination the implementation deliberately does not support.
struct UnsupportedParameterError : Error {
    using Error::Error;
};

} // namespace dds
