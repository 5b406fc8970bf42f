#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace projbar {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Input that is well formed but outside the domain of an operation
/// (irrelevant form, dimension mismatch, unsupported parameter count).
class DomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant; indicates invalid data that slipped past validation.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace projbar
