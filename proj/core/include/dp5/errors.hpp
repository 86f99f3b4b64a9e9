#pragma once

#include <stdexcept>
#include <string>

namespace dp5 {

// Input or precondition violation. The CLI maps these to exit code 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation that cannot complete: unlucky randomness after retries,
// degenerate inputs, failed exact identities. CLI exit code 3.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by exact_divide when the divisor does not divide.
class NotDivisible : public ComputationError {
 public:
  NotDivisible() : ComputationError("not divisible") {}
};

// A configured cost cap was exceeded; `required` is the value the caller
// would need to allow.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, long long required)
      : std::runtime_error(what), required_(required) {}
  long long required() const noexcept { return required_; }

 private:
  long long required_;
};

}  // namespace dp5
