#pragma once

#include <stdexcept>
#include <string>

namespace dnaswap {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad qubit indices, letters, angles, permutations.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed (corrupted state, wrong protocol stage).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace dnaswap
