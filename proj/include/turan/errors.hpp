#pragma once

#include <stdexcept>
#include <string>

namespace turan {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain arguments (empty input, NaN, alpha == 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A documented precondition on the mathematical object does not hold,
// e.g. a polynomial with a zero outside K, or a set that is not normalized.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A configured sample or tuple cap was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace turan
