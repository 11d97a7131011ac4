#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pml {

// Invalid parameter or malformed input. The offending field is kept so front
// ends can report it; the CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Operation argument outside its documented domain (negative effort, share
// outside [0,1], ...). Treated like a validation failure at the CLI boundary.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace pml
