#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schedsim {

/// Contract violation on a pure operation (bad range, empty input, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A workload that cannot be simulated under the requested configuration.
class InvalidWorkload : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed workload text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed document whose content breaks a workload rule.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::runtime_error(what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A comparison table was requested with cells missing.
class IncompleteInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace schedsim
