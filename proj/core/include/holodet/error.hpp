#pragma once

#include <stdexcept>
#include <string>

namespace holodet {

// Base class for every error raised by the library. The three subclasses map
// onto distinct CLI exit statuses.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data violates a structural invariant (bad quiver, bad shapes, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A method declined to run: size budget exceeded, preconditions of the
// identity unmet (e.g. infinite prime set for the finite Euler product).
class RefusalError : public Error {
 public:
  using Error::Error;
};

// Something that must never happen did happen (e.g. a non-integral
// coefficient in the integer-coefficient expansion).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace holodet
