#pragma once

#include <stdexcept>
#include <string>

namespace dqtsc {

// Raised when a caller breaks a documented precondition (wrong phase kind,
// mismatched tensor shapes, ...). Indicates a programming error.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when a SimState fails its structural invariants.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for invalid run configuration; `field()` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace dqtsc
