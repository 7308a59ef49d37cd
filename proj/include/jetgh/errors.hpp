#pragma once

#include <stdexcept>
#include <string>

namespace jetgh {

// Every error raised by the library derives from Error so callers (the CLI in
// particular) can map categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point outside a chart's non-periodic domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Input that violates an operation's precondition (dimension mismatch, point
// not on the hyperboloid, empty cloud, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Bad configuration: unknown family key, parameter out of bounds, malformed
// sweep range.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A scenario could not be constructed from valid-looking parameters.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// Singular matrices, failed inversions, non-finite results.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Unreadable or unwritable files, malformed CSV input.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace jetgh
