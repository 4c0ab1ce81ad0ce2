#pragma once

#include <stdexcept>
#include <string>

namespace mw {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad sizes, ranges, flags).
struct InvalidArgument : Error {
    using Error::Error;
};

/// A file could not be opened, read, or written.
struct IoError : Error {
    using Error::Error;
};

/// Malformed input data; the message carries the file location.
struct ParseError : Error {
    using Error::Error;
};

/// A numerical routine failed (instability, singular system).
struct NumericalError : Error {
    using Error::Error;
};

/// An iterative method hit its iteration cap; carries the last estimate.
struct ConvergenceError : NumericalError {
    ConvergenceError(const std::string& what, double estimate)
        : NumericalError(what), last_estimate(estimate) {}
    double last_estimate;
};

}  // namespace mw
