#pragma once

#include <stdexcept>
#include <string>

namespace poissonplan {

/// A numerical function was called outside the region where it is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A user-facing parameter failed validation. `field()` names the offender
/// using the CLI spelling (e.g. "eps-r") so front ends can report it as-is.
class ParameterError : public std::invalid_argument {
 public:
  ParameterError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A request exceeds a configured resource cap (trial count, search range).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace poissonplan
