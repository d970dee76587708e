#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ssmc {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  enum class Kind { Syntax, UnknownIdentifier, Arity };

  ParseError(Kind kind, std::size_t offset, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  /// Byte offset into the parsed text.
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

/// Function domain violation during evaluation (log/sqrt of a negative,
/// division by zero, ...). Carries the printed offending subexpression.
class DomainError : public Error {
 public:
  DomainError(std::string subexpression, const std::string& reason);

  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

class SingularMetricError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::size_t line, const std::string& message);

  /// 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ssmc
