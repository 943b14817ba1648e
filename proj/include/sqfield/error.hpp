#pragma once

#include <stdexcept>
#include <string>

namespace sqfield {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive operation would exceed the configured enumeration budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// The hypothesis of a theorem or lemma is not satisfied by the instance.
class HypothesisNotMet : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (digit specs, config files).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace sqfield
