#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bvk {

// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Division or inversion hit a zero divisor of the ring.
struct NullConeError : Error {
    using Error::Error;
};

struct SyntaxError : Error {
    std::size_t offset;
    SyntaxError(std::string msg, std::size_t off)
        : Error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

struct UnknownIdentifierError : SyntaxError {
    UnknownIdentifierError(const std::string& name, std::size_t off)
        : SyntaxError("unknown identifier '" + name + "'", off) {}
};

// Expression could not be evaluated at a grid point (singular denominator, ...).
struct EvaluationError : Error {
    using Error::Error;
};

struct DegeneratePairError : Error {
    using Error::Error;
};

struct VanishingF0Error : Error {
    using Error::Error;
};

struct NotComplexValuedError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace bvk
