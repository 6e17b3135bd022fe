#pragma once

#include <stdexcept>
#include <string>

namespace rayleigh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A material or boundary parameter violates a required inequality.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

/// The requested speed lies inside an exclusion zone around 0 or ±c2.
class SingularSpeed : public Error {
 public:
  using Error::Error;
};

/// The boundary parameters are outside the regime an operation accepts.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Bad arguments to an analysis routine (empty grids, non-positive tolerances...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace rayleigh
