#pragma once

#include <stdexcept>
#include <string>

namespace factorforge {

// Base of every error the library throws. Each subclass maps to one CLI
// exit code (see cli.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad ids, loops, length mismatches, parse failures.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A hypothesis of the theorem being run does not hold for the input.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

// An exhaustive search was asked to run above its configured size cap.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

// A search over candidates came back empty.
class NotFound : public Error {
 public:
  using Error::Error;
};

// The construction reached a state its correctness argument rules out.
class InternalInvariant : public Error {
 public:
  using Error::Error;
};

}  // namespace factorforge
