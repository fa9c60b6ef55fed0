#pragma once

#include <stdexcept>
#include <string>

namespace fusion {

/// Malformed or inconsistent caller input (mismatched lengths, repeated points, ...).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A mathematical invariant the engine relies on failed to hold.
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fusion
