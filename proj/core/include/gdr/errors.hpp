#pragma once

#include <stdexcept>
#include <string>

namespace gdr {

/// Bad user input: malformed files, unknown ids, schema mismatches.
/// Maps to CLI exit code 3.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A generative backend gave up after exhausting its retry budget.
/// Maps to CLI exit code 4.
class BackendError : public std::runtime_error {
public:
  explicit BackendError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal contract was violated. Maps to CLI exit code 5.
class InvariantError : public std::logic_error {
public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

/// Syntax error in a line-oriented source (format DSL, detox response).
class ParseError : public InputError {
public:
  ParseError(const std::string& what, int line, int column)
      : InputError(what + " (line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace gdr
