#pragma once

#include <stdexcept>
#include <string>

namespace polyiso {

// Base of every error the library raises.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

// An input lies outside the open domain of the quantity being evaluated.
class DomainError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "DomainError"; }
};

// Arguments are individually valid but mutually inconsistent.
class ArgumentError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "ArgumentError"; }
};

// Root finder endpoints do not bracket a sign change.
class BracketError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "BracketError"; }
};

class ConvergenceError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "ConvergenceError"; }
};

// Requested work exceeds the configured evaluation budget.
class ResourceError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "ResourceError"; }
};

} // namespace polyiso
