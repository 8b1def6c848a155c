#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace maslov {

/// Base class for every error raised by the library.  The CLI maps these to
/// exit code 1 (domain error); anything else escaping is treated as a bug.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numeric parameter is outside its admissible range (h <= 0, rho <= 0, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Operands disagree in shape, grid, dimension or semiring.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// The operation is not defined for the given semiring (e.g. order on a
/// non-idempotent structure).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Fixed-point or closure iteration failed to stabilise.
class DivergentError : public Error {
public:
    using Error::Error;
};

/// Input violates a domain precondition (grid too small, non-positive data,
/// empty set, scale out of range).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed input text.  `line` is 1-based, 0 when not applicable.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace maslov
