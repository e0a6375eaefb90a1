#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cpz {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A formula mentions an atom the world or vocabulary does not know about.
class VocabularyMismatch : public Error {
 public:
  using Error::Error;
};

/// World enumeration was requested over more atoms than the configured cap.
class VocabularyTooLarge : public Error {
 public:
  VocabularyTooLarge(std::size_t size, std::size_t cap)
      : Error("vocabulary has " + std::to_string(size) + " atoms, cap is " + std::to_string(cap)),
        size_(size),
        cap_(cap) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t size_;
  std::size_t cap_;
};

/// Syntax error in a formula, a defaults file or a query file. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An operation that requires a consistent database was given an inconsistent one.
class InconsistentDatabase : public Error {
 public:
  using Error::Error;
};

/// Invariant breach inside the engine (a bug, never a user error).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace cpz
