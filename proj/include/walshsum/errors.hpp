#pragma once

#include <stdexcept>
#include <string>

namespace walshsum {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A precondition of an operation does not hold (resolution too small,
// exponent out of range, malformed literal, ...).
struct DomainError : Error {
  using Error::Error;
};

// Two computations that must agree did not. Indicates an implementation
// fault rather than bad input.
struct InvariantError : Error {
  using Error::Error;
};

}  // namespace walshsum
