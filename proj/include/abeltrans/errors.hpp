#pragma once

#include <stdexcept>
#include <string>

namespace abeltrans {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violates an operation's precondition (wrong ambient, wrong case,
/// not complemented, ...). The CLI maps these to exit status 3.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// 64-bit arithmetic would overflow.
class OverflowError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// An enumeration or search budget was exceeded.
class CapExceeded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A constructed object failed its own certificate check. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace abeltrans
