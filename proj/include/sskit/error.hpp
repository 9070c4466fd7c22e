#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sskit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an enumeration exceeds its configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t partial_count)
      : Error(what + " (partial count " + std::to_string(partial_count) + ")"),
        partial_(partial_count) {}

  std::size_t partial_count() const noexcept { return partial_; }

 private:
  std::size_t partial_;
};

/// Raised by the text parsers; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sskit
