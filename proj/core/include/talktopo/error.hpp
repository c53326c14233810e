#pragma once

#include <stdexcept>
#include <string>

namespace talktopo {

/// Base of every exception thrown by the library. The category decides the
/// process exit code used by the command-line tool.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed arguments that violate an operation's preconditions.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the domain of a mathematical operation (e.g. the
/// cosine of a zero-norm vector).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input data is malformed or inconsistent.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A configured resource limit would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Optimisation diverged (non-finite loss).
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace talktopo
