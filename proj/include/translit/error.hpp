#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace translit {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input data or arguments: malformed files, precondition violations.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A malformed line in a structured input file.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : ValidationError(file + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A codepoint that belongs to a mapped class but has no table entry.
class UnmappedSymbolError : public Error {
 public:
  explicit UnmappedSymbolError(char32_t cp);

  char32_t codepoint() const { return cp_; }

 private:
  char32_t cp_;
};

/// Filesystem failures (missing files, unwritable outputs).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace translit
