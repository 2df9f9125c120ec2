#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bloch {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph document or config file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Schema-valid input that violates a graph invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::string what, std::vector<std::string> violations)
      : Error(std::move(what)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedTiling : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature hit its subdivision cap before reaching the tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(std::string what, double achieved_error)
      : Error(std::move(what)), achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

class PatternError : public Error {
 public:
  using Error::Error;
};

}  // namespace bloch
