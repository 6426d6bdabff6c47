#pragma once

#include <stdexcept>
#include <string>

namespace oamem {

/// Invalid numeric input to a mathematical operation (x <= 0 for ln_gamma, p < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent request (bad sweep request, missing transfer parameters).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical quadrature or optimizer failed to reach its target.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}

  /// Error estimate reached before giving up.
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Configuration file could not be parsed or failed validation.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string field = {})
      : std::runtime_error(what), line_(line), field_(std::move(field)) {}

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oamem
