#pragma once

#include <stdexcept>
#include <string>

namespace wcont {

/// Base class for all errors raised by the engine.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CodDomMismatch : Error {
  using Error::Error;
};

struct BaseMismatch : Error {
  using Error::Error;
};

struct SquareDoesNotCommute : Error {
  using Error::Error;
};

struct UnboundVariable : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct UnverifiedInput : Error {
  using Error::Error;
};

struct IllTyped : Error {
  using Error::Error;
};

struct UnverifiedTracking : Error {
  using Error::Error;
};

struct InvalidRep : Error {
  using Error::Error;
};

struct TypeMismatch : Error {
  using Error::Error;
};

struct KindMismatch : Error {
  using Error::Error;
};

struct NotAnswerable : Error {
  using Error::Error;
};

struct SearchSpaceExceeded : Error {
  using Error::Error;
};

}  // namespace wcont
