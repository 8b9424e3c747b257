#pragma once

#include <stdexcept>
#include <string>

namespace kronecker {

// Raised when caller-supplied input breaks a documented precondition:
// malformed literals, dimension mismatches, horizon guard violations,
// sequences too short for the requested check.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when two routes that must agree do not. Always a defect.
class invariant_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

[[noreturn]] inline void fail_validation(const std::string& what) {
  throw validation_error(what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) fail_validation(what);
}

}  // namespace detail
}  // namespace kronecker
