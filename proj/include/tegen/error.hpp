#pragma once

#include <stdexcept>
#include <string>

namespace tegen {

// Values double as process exit codes for the command-line tool.
enum class ErrorCategory : int {
  config = 2,
  geometry = 3,
  domain = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }

 private:
  ErrorCategory category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

/// Parse failure at a specific 1-based line of a structured text file.
class ParseError : public ConfigError {
 public:
  ParseError(int line, const std::string& what)
      : ConfigError("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A lookup into a material table for an entry it does not carry.
class MissingDataError : public ConfigError {
 public:
  explicit MissingDataError(const std::string& what) : ConfigError(what) {}
};

class GeometryError : public Error {
 public:
  explicit GeometryError(const std::string& what) : Error(ErrorCategory::geometry, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCategory::domain, what) {}
};

}  // namespace tegen
