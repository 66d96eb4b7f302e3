#pragma once

#include <stdexcept>
#include <string>

namespace tci {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violates a type invariant (non-convex gauge, weights not summing
/// to one, broken triangle inequality, ...).
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its precondition (dimension mismatch,
/// uncentered function, gauge without the required assumptions, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The problem is well posed but the requested quantity does not exist
/// (degenerate gauge, infinite cost entry, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace tci
