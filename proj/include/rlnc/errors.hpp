#pragma once

#include <stdexcept>
#include <string>

namespace rlnc {

/// Base class for all library errors; the CLI maps these to exit code 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrimeError : Error {
    using Error::Error;
};

struct ReduciblePolynomialError : Error {
    using Error::Error;
};

struct NoDefaultModulusError : Error {
    using Error::Error;
};

struct DivisionByZeroError : Error {
    using Error::Error;
};

struct InvalidRangeError : Error {
    using Error::Error;
};

struct ReceivedExceedsTransmittedError : Error {
    using Error::Error;
};

/// Raised when an exhaustive enumeration or field-table request exceeds
/// its size guard.
struct TooLargeError : Error {
    using Error::Error;
};

}  // namespace rlnc
