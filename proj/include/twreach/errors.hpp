#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twreach {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. The message already carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + ", line " + std::to_string(line)), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A tree decomposition is not valid for the graph it is paired with.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An exact integer quantity does not fit the fixed-width representation.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace twreach
