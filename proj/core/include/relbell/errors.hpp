#pragma once

#include <stdexcept>
#include <string>

namespace relbell {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the physical domain, e.g. a superluminal velocity.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Contract violated by the caller: non-unit axis, zero field, a field that
// is not orthogonal to the boost where the closed form requires it.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Numerically singular configuration.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace relbell
