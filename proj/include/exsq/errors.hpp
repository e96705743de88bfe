#pragma once

#include <stdexcept>
#include <string>

namespace exsq {

/// Base class for all recoverable errors raised by this library.
/// ParseError covers malformed textual input; everything else derives
/// from DomainError and indicates a violated precondition.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct RingMismatch : DomainError {
    using DomainError::DomainError;
};

struct NotAUnit : DomainError {
    using DomainError::DomainError;
};

struct ShapeMismatch : DomainError {
    using DomainError::DomainError;
};

struct InvalidIndexSet : DomainError {
    using DomainError::DomainError;
};

struct ArityOutOfRange : DomainError {
    using DomainError::DomainError;
};

struct OverlappingIndices : DomainError {
    using DomainError::DomainError;
};

struct RankTooSmall : DomainError {
    using DomainError::DomainError;
};

struct NotInvertible : DomainError {
    using DomainError::DomainError;
};

struct NotInvertibleModulo : DomainError {
    using DomainError::DomainError;
};

struct UnsupportedRing : DomainError {
    using DomainError::DomainError;
};

struct UnsupportedFormat : ParseError {
    using ParseError::ParseError;
};

} // namespace exsq
