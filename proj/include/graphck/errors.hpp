#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphck {

// Caller broke an operation's documented argument contract.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Input is well formed but outside the hypotheses an operation needs
// (e.g. a graph with sinks handed to the K-theory code).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configurable size bound was exceeded. Never a silent truncation.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(message), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace graphck
