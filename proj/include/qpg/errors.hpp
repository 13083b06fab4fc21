#pragma once

#include <stdexcept>
#include <string>

namespace qpg {

/// Malformed input: bad file contents, violated preconditions, invalid
/// parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource cap (group order, tensor size, ...) would be exceeded.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, long long cap)
      : std::runtime_error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  long long cap() const noexcept { return cap_; }

 private:
  long long cap_;
};

/// A numerical invariant that the engine asserts on its own output broke.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qpg
