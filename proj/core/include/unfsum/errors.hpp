#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace unfsum {

/// A component or product violates a structural invariant.
class ModelError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed `.sys` document. what() carries "line:col: message".
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }
  [[nodiscard]] const std::string& message() const { return message_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// The unfolder hit its event or time budget before the prefix was complete.
class LimitExceeded : public std::runtime_error {
public:
  enum class Kind { Events, Seconds };

  LimitExceeded(Kind kind, std::size_t events_added, const std::string& message)
      : std::runtime_error(message), kind_(kind), events_added_(events_added) {}

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] std::size_t events_added() const { return events_added_; }

private:
  Kind kind_;
  std::size_t events_added_;
};

/// Explicit-state exploration exceeded its configured state bound.
class StateBoundExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An operation was asked to interpret a prefix built by an incompatible strategy.
class StrategyMismatch : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Broken internal invariant. Always a bug.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace unfsum
