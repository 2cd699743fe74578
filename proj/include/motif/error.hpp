#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace motif {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed triple file, motif file, or other textual input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  explicit ParseError(const std::string& message) : Error(message) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

/// Unknown motif catalog entry.
class CatalogError : public Error {
 public:
  using Error::Error;
};

/// Input exceeds a configured search size cap.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation was violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace motif
