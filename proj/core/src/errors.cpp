#include "ssmc/errors.hpp"

namespace ssmc {

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& message)
    : Error(message + " at offset " + std::to_string(offset)),
      kind_(kind),
      offset_(offset) {}

DomainError::DomainError(std::string subexpression, const std::string& reason)
    : Error(reason + " in '" + subexpression + "'"),
      subexpression_(std::move(subexpression)) {}

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

}  // namespace ssmc
