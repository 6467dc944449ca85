#pragma once

#include <stdexcept>
#include <string>

namespace elimres {

/// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad syntax, unknown identifiers, inconsistent shapes,
/// mismatched variable spaces.
class UsageError : public Error {
public:
    using Error::Error;
};

/// A mathematical precondition of an operation does not hold (input is not
/// homogeneous, a parameterization has base points, degree conditions fail).
/// `condition()` names the violated condition.
class PreconditionError : public Error {
public:
    PreconditionError(std::string condition, const std::string& what)
        : Error(condition + ": " + what), condition_(std::move(condition)) {}

    const std::string& condition() const noexcept { return condition_; }

private:
    std::string condition_;
};

/// Parse failure with the byte offset of the offending token.
class ParseError : public UsageError {
public:
    ParseError(std::size_t position, const std::string& what)
        : UsageError("parse error at position " + std::to_string(position) + ": " + what),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// An internal invariant failed. Never expected on valid input.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace elimres
