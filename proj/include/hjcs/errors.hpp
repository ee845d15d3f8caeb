#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hjcs {

/// A finite sequence does not have enough materialized items to decide.
class InsufficientPrefix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An up-front count exceeded the configured cap; `required` is the exact
/// count the operation would have needed.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::uint64_t required)
      : std::runtime_error(what + " (required " + std::to_string(required) + ")"),
        required_(required) {}
  std::uint64_t required() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

/// A search ran out of evaluations before reaching a conclusion. Never a
/// claim that the searched-for object does not exist.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WitnessInconsistent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Inconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IncompleteTable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownName : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hjcs
