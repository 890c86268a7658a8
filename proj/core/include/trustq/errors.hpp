#pragma once

#include <stdexcept>
#include <string>

namespace trustq {

// Base for every error raised by the library. The CLI maps subclasses onto
// exit codes: ValidationError and DomainError -> 1, FormatError and IoError -> 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input value is outside its documented domain. `field()` names the
// offending field (possibly a positional path such as "cycles[2].q") and
// `bound()` the violated constraint.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, std::string bound, double value);
  ValidationError(std::string field, std::string message);

  const std::string& field() const noexcept { return field_; }
  const std::string& bound() const noexcept { return bound_; }

  // Same error with `prefix` prepended to the field path.
  ValidationError with_prefix(const std::string& prefix) const;

 private:
  ValidationError(std::string field, std::string bound, std::string message);

  std::string field_;
  std::string bound_;
  std::string detail_;
};

// Mathematically valid input for which the requested result does not exist
// (complex or repeated eigenvalues, no positive dominant eigenvalue, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DegeneracyError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A score record was appended out of timestamp order.
class OrderingError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  InsufficientDataError(std::size_t required, std::size_t available);

  std::size_t required() const noexcept { return required_; }
  std::size_t available() const noexcept { return available_; }

 private:
  std::size_t required_;
  std::size_t available_;
};

// Malformed file contents: unparseable JSON, wrong types, missing keys.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace trustq
