#pragma once

#include <stdexcept>
#include <string>

namespace ucr {

/// Argument outside the mathematical or physical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its target accuracy.
///
/// Carries the last iterate (or best estimate) so callers can report it.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what, double last_value = 0.0)
      : std::runtime_error(what), last_value_(last_value) {}

  double last_value() const noexcept { return last_value_; }

 private:
  double last_value_;
};

}  // namespace ucr
