#pragma once

#include <stdexcept>
#include <string>

namespace leibniz {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in spaces of different dimension.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A family constructor or operation was called outside its parameter range.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class NotAnIdeal : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NotNilpotent : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (scalars, family specs, JSON documents).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace leibniz
