#pragma once

#include <stdexcept>
#include <string>

namespace fal {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid precision or configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed catalog documents, recipe strings or numeric literals.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Arguments outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A search or enumeration would exceed its configured cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace fal
