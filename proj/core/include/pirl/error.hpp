#pragma once

#include <stdexcept>
#include <string>

namespace pirl {

// Caller violated a precondition (wrong dimension, stepping a finished
// episode, sampling an under-filled buffer, ...).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A configuration or message failed validation. `field()` is the dotted path
// of the offending entry, e.g. "advisor.frequency".
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pirl
