#pragma once

#include <stdexcept>
#include <string>

namespace creg {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inhomogeneous input, inconsistent degrees, malformed presentations.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A regularity or resolution operation received the zero module.
class ZeroModuleError : public Error {
 public:
  using Error::Error;
};

/// Truncation M_{>=q} vanished.
class ZeroTruncationError : public ZeroModuleError {
 public:
  using ZeroModuleError::ZeroModuleError;
};

class NotFiniteLengthError : public Error {
 public:
  using Error::Error;
};

/// An operation that presumes standard grading was given weighted input.
class GradingError : public Error {
 public:
  using Error::Error;
};

/// A self-check (Hilbert function comparison, Euler characteristic) failed.
class CertificateError : public Error {
 public:
  using Error::Error;
};

/// Degree or homological caps were exhausted before a certified answer.
class CapExhausted : public Error {
 public:
  using Error::Error;
};

class EmptyTableError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace creg
