#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace autgroup {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Structurally well-formed input that violates a semantic invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a finitary automaton got one with a cycle.
class NotFinitaryError : public Error {
 public:
  using Error::Error;
};

/// A guarded exponential computation was asked to exceed its bound.
class LimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace autgroup
