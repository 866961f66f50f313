#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace magnn {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A predicate is unknown to the signature or used with the wrong arity.
class SignatureMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
      : Error(format(what, line, column)), detail_(what), line_(line), column_(column) {}

  /// The message without the position prefix.
  const std::string& detail() const { return detail_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    std::string out = "parse error at line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out + ": " + what;
  }

  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

/// A graph that cannot be decoded (non-Boolean label).
class InvalidGraph : public Error {
 public:
  using Error::Error;
};

class UnknownConstant : public Error {
 public:
  using Error::Error;
};

/// A concept or rule outside the fragment an operation requires.
class FragmentViolation : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed the configured limit.
class BoundExceeded : public Error {
 public:
  BoundExceeded(const std::string& what, std::uint64_t size) : Error(what), size_(size) {}
  std::uint64_t size() const { return size_; }

 private:
  std::uint64_t size_;
};

}  // namespace magnn
