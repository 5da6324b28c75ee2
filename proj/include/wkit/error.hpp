#pragma once

#include <stdexcept>
#include <string>

namespace wkit {

/// Base of every error the library raises. Undefined partial operations are
/// not errors; they come back as empty optionals.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different groups (backend kind or dimension differ).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Effects from two different effect algebras were combined.
class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

/// An input broke a documented contract (e.g. a non-symmetric matrix).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A precondition on the arguments of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The instance is outside the supported scope (size limits, backend).
class UnsupportedInstance : public Error {
 public:
  using Error::Error;
};

/// The element to add to a ground set is already in it.
class AlreadyPresent : public Error {
 public:
  using Error::Error;
};

/// An element does not commute with some stored table value.
class CommutationFailure : public Error {
 public:
  using Error::Error;
};

/// An observable is malformed (atoms do not decompose the unit, bad labels).
class InvalidObservable : public Error {
 public:
  using Error::Error;
};

/// A file or JSON document does not match the expected schema.
class LoadError : public Error {
 public:
  using Error::Error;
};

}  // namespace wkit
