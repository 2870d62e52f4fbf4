#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace toriclift {

/// Malformed or invariant-violating input (bad fan, bad subgroup, bad file).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
  InputError(const std::string& what, std::vector<std::string> issues)
      : std::runtime_error(what), issues_(std::move(issues)) {}

  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Syntax error in a fan file, with a 1-based position.
class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& message)
      : InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A mathematical precondition failed (e.g. inconsistent homomorphism data,
/// degenerate fan where a non-degenerate one is required).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured size guard was exceeded; the computation was not attempted.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace toriclift
